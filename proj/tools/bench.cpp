// Benchmark: solver kernels with jobs=1 (serial reference path) vs all cores,
// answers cross-checked, oracle timings on the small instances.

#include <chrono>
#include <cstdio>
#include <random>
#include <thread>

#include "rsimple/directed.hpp"
#include "rsimple/oracle.hpp"
#include "rsimple/undirected.hpp"

using namespace rsimple;

namespace {

double seconds(std::chrono::steady_clock::time_point a, std::chrono::steady_clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

Digraph random_digraph(int n, double p, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<Arc> arcs;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (u != v && coin(rng) < p) arcs.push_back({u, v});
    return Digraph(n, std::move(arcs));
}

struct Row {
    const char* name;
    double serial, parallel, oracle;
    bool agree;
};

void print_row(const Row& r) {
    std::printf("%-28s serial %8.3fs   jobs=%-2u %8.3fs   speedup %5.2fx   oracle %8.3fs   %s\n",
                r.name, r.serial, std::thread::hardware_concurrency(), r.parallel,
                r.parallel > 0 ? r.serial / r.parallel : 0.0, r.oracle,
                r.agree ? "answers agree" : "MISMATCH");
}

}  // namespace

int main() {
    int cores = static_cast<int>(std::thread::hardware_concurrency());
    std::printf("solver benchmark, %d hardware threads\n", cores);

    // directed: extremal hub-and-cycles instances at the exact threshold
    for (int r = 2; r <= 3; ++r) {
        auto [g, k_opt] = gen_tightness_directed(r);
        DirectedParams ser, par;
        ser.jobs = 1;
        par.jobs = 0;
        Nat k = k_opt + 1;  // negative instance forces the full sweep
        auto t0 = std::chrono::steady_clock::now();
        bool a1 = solve_directed(g, k, Nat(r), ser);
        auto t1 = std::chrono::steady_clock::now();
        bool a2 = solve_directed(g, k, Nat(r), par);
        auto t2 = std::chrono::steady_clock::now();
        Nat omax = brute_rsimple_max(g, Nat(r), k);
        auto t3 = std::chrono::steady_clock::now();
        char name[64];
        std::snprintf(name, sizeof name, "directed tightness r=%d", r);
        print_row({name, seconds(t0, t1), seconds(t1, t2), seconds(t2, t3),
                   a1 == a2 && a1 == (omax >= k)});
    }

    // directed: dense random graphs
    std::mt19937_64 rng(12345);
    for (int n = 4; n <= 5; ++n) {
        Digraph g = random_digraph(n, 0.5, rng);
        Nat k = 10, r = 2;
        DirectedParams ser, par;
        ser.jobs = 1;
        par.jobs = 0;
        auto t0 = std::chrono::steady_clock::now();
        bool a1 = solve_directed(g, k, r, ser);
        auto t1 = std::chrono::steady_clock::now();
        bool a2 = solve_directed(g, k, r, par);
        auto t2 = std::chrono::steady_clock::now();
        Nat omax = brute_rsimple_max(g, r, k);
        auto t3 = std::chrono::steady_clock::now();
        char name[64];
        std::snprintf(name, sizeof name, "directed random n=%d", n);
        print_row({name, seconds(t0, t1), seconds(t1, t2), seconds(t2, t3),
                   a1 == a2 && a1 == (omax >= k)});
    }

    // undirected general pipeline on small connected graphs
    {
        UGraph g(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}});
        Nat k = 11, r = 3;
        UndirectedParams ser, par;
        ser.jobs = 1;
        par.jobs = 0;
        ser.pipeline = par.pipeline = UndirectedPipeline::General;
        auto t0 = std::chrono::steady_clock::now();
        bool a1 = solve_undirected(g, k, r, ser);
        auto t1 = std::chrono::steady_clock::now();
        bool a2 = solve_undirected(g, k, r, par);
        auto t2 = std::chrono::steady_clock::now();
        Nat omax = brute_rsimple_max(g, r, k);
        auto t3 = std::chrono::steady_clock::now();
        print_row({"undirected general n=4", seconds(t0, t1), seconds(t1, t2), seconds(t2, t3),
                   a1 == a2 && a1 == (omax >= k)});
    }

    // undirected special pipeline
    {
        std::mt19937_64 rng2(7);
        UGraph g = [&] {
            std::vector<Edge> edges;
            for (int v = 1; v < 7; ++v) {
                std::uniform_int_distribution<int> pick(0, v - 1);
                edges.push_back({pick(rng2), v});
            }
            edges.push_back({0, 6});
            edges.push_back({2, 5});
            return UGraph(7, std::move(edges));
        }();
        Nat k = 35, r = 6;
        UndirectedParams ser, par;
        ser.jobs = 1;
        par.jobs = 0;
        auto t0 = std::chrono::steady_clock::now();
        bool a1 = solve_undirected(g, k, r, ser);
        auto t1 = std::chrono::steady_clock::now();
        bool a2 = solve_undirected(g, k, r, par);
        auto t2 = std::chrono::steady_clock::now();
        Nat omax = brute_rsimple_max(g, r, k);
        auto t3 = std::chrono::steady_clock::now();
        print_row({"undirected special n=7", seconds(t0, t1), seconds(t1, t2), seconds(t2, t3),
                   a1 == a2 && a1 == (omax >= k)});
    }
    return 0;
}

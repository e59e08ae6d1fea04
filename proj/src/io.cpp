#include "rsimple/io.hpp"

#include <istream>
#include <sstream>

#include "json.hpp"
#include "rsimple/errors.hpp"

namespace rsimple {

using nlohmann::json;

namespace {

Nat nat_field(const json& j, const std::string& name) {
    const auto& v = j.at(name);
    if (v.is_string()) return parse_nat(v.get<std::string>());
    if (v.is_number_unsigned()) return Nat(v.get<std::uint64_t>());
    if (v.is_number_integer()) {
        auto x = v.get<std::int64_t>();
        if (x < 0) throw ValidationError(name + " must be nonnegative");
        return Nat(x);
    }
    throw ParseError(name + " must be a decimal string or nonnegative integer");
}

GraphInstance parse_graph(const json& j) {
    GraphInstance g;
    std::string type = j.at("type").get<std::string>();
    if (type == "digraph")
        g.directed = true;
    else if (type == "graph")
        g.directed = false;
    else
        throw ParseError("type must be 'digraph' or 'graph'");
    g.n = j.at("n").get<int>();
    if (g.n < 0) throw ValidationError("n must be nonnegative");
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2) throw ParseError("edges entries must be pairs");
        int u = e[0].get<int>(), v = e[1].get<int>();
        if (u < 0 || u >= g.n || v < 0 || v >= g.n)
            throw ValidationError("edge endpoint out of range");
        if (u == v) throw ValidationError("self-loop rejected");
        g.edges.push_back({u, v});
    }
    if (j.contains("mult")) {
        for (const auto& m : j.at("mult")) {
            Nat val = m.is_string() ? parse_nat(m.get<std::string>()) : Nat(m.get<std::uint64_t>());
            if (val < 1) throw ValidationError("multiplicity must be >= 1");
            g.mult.push_back(val);
        }
        if (g.mult.size() != g.edges.size())
            throw ValidationError("mult must align with edges");
    }
    if (j.contains("k")) {
        g.k = nat_field(j, "k");
        if (*g.k < 1) throw ValidationError("k must be >= 1");
    }
    if (j.contains("r")) {
        g.r = nat_field(j, "r");
        if (*g.r < 1) throw ValidationError("r must be >= 1");
    }
    return g;
}

PackingInstance parse_packing(const json& j) {
    PackingInstance p;
    p.universe = j.at("universe").get<int>();
    p.p = j.at("p").get<int>();
    p.q = nat_field(j, "q");
    p.r = nat_field(j, "r");
    if (p.r < 1) throw ValidationError("r must be >= 1");
    for (const auto& s : j.at("sets")) {
        std::vector<int> set;
        for (const auto& e : s) set.push_back(e.get<int>());
        p.sets.push_back(std::move(set));
    }
    if (j.contains("mult")) {
        for (const auto& m : j.at("mult"))
            p.mult.push_back(m.is_string() ? parse_nat(m.get<std::string>())
                                           : Nat(m.get<std::uint64_t>()));
    } else {
        p.mult.assign(p.sets.size(), Nat(1));
    }
    p.validate();
    return p;
}

}  // namespace

Digraph GraphInstance::digraph() const {
    if (!directed) throw ValidationError("expected a digraph instance");
    std::vector<Arc> arcs(edges.begin(), edges.end());
    return Digraph(n, std::move(arcs));
}

UGraph GraphInstance::ugraph() const {
    if (directed) throw ValidationError("expected an undirected instance");
    std::vector<Edge> e(edges.begin(), edges.end());
    return UGraph(n, std::move(e));
}

MultiDigraph GraphInstance::multidigraph() const {
    if (!directed) throw ValidationError("expected a digraph instance");
    MultiDigraph m;
    m.n = n;
    for (std::size_t i = 0; i < edges.size(); ++i)
        m.add(edges[i].first, edges[i].second, mult.empty() ? Nat(1) : mult[i]);
    return m;
}

MultiUGraph GraphInstance::multiugraph() const {
    if (directed) throw ValidationError("expected an undirected instance");
    MultiUGraph m;
    m.n = n;
    for (std::size_t i = 0; i < edges.size(); ++i)
        m.add(edges[i].first, edges[i].second, mult.empty() ? Nat(1) : mult[i]);
    return m;
}

Instance parse_instance(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    try {
        if (j.contains("universe")) return parse_packing(j);
        return parse_graph(j);
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed instance: ") + e.what());
    }
}

Instance parse_instance_stream(std::istream& in) {
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_instance(ss.str());
}

std::string serialize(const GraphInstance& inst) {
    json j;
    j["type"] = inst.directed ? "digraph" : "graph";
    j["n"] = inst.n;
    j["edges"] = json::array();
    for (auto [u, v] : inst.edges) j["edges"].push_back({u, v});
    if (!inst.mult.empty()) {
        j["mult"] = json::array();
        for (const auto& m : inst.mult) j["mult"].push_back(to_decimal(m));
    }
    if (inst.k) j["k"] = to_decimal(*inst.k);
    if (inst.r) j["r"] = to_decimal(*inst.r);
    return j.dump();
}

std::string serialize(const PackingInstance& inst) {
    json j;
    j["universe"] = inst.universe;
    j["p"] = inst.p;
    j["q"] = to_decimal(inst.q);
    j["r"] = to_decimal(inst.r);
    j["sets"] = json::array();
    for (const auto& s : inst.sets) j["sets"].push_back(s);
    j["mult"] = json::array();
    for (const auto& m : inst.mult) j["mult"].push_back(to_decimal(m));
    return j.dump();
}

Walk parse_walk(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    Walk w;
    try {
        for (const auto& v : j.at("walk")) w.vertices.push_back(v.get<int>());
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed walk: ") + e.what());
    }
    return w;
}

std::string serialize_walk(const Walk& w) {
    json j;
    j["walk"] = w.vertices;
    return j.dump();
}

}  // namespace rsimple

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "rsimple/errors.hpp"
#include "rsimple/io.hpp"

using namespace rsimple;

TEST_CASE("graph instance parsing") {
    auto inst = parse_instance(R"({"type":"digraph","n":2,"edges":[[0,1]],"k":"2","r":"1"})");
    auto& gi = std::get<GraphInstance>(inst);
    CHECK(gi.directed);
    CHECK(gi.n == 2);
    CHECK(gi.k == Nat(2));
    CHECK(gi.r == Nat(1));
    Digraph g = gi.digraph();
    CHECK(g.has_arc(0, 1));
}

TEST_CASE("validation failures") {
    CHECK_THROWS_AS(parse_instance(R"({"type":"digraph","n":2,"edges":[[0,1]],"k":"0","r":"1"})"),
                    ValidationError);
    CHECK_THROWS_AS(parse_instance(R"({"type":"digraph","n":2,"edges":[[0,0]]})"), ValidationError);
    CHECK_THROWS_AS(parse_instance(R"({"type":"digraph","n":2,"edges":[[0,2]]})"), ValidationError);
    CHECK_THROWS_AS(parse_instance(R"({"type":"digraph","n":2,"edges":[[0,1]],"r":"0"})"),
                    ValidationError);
    CHECK_THROWS_AS(parse_instance("not json"), ParseError);
    CHECK_THROWS_AS(parse_instance(R"({"type":"mixed","n":1,"edges":[]})"), ParseError);
}

TEST_CASE("multigraph instances carry exact multiplicities") {
    auto inst = parse_instance(
        R"({"type":"graph","n":2,"edges":[[0,1]],"mult":["123456789012345678901234567890"]})");
    auto& gi = std::get<GraphInstance>(inst);
    MultiUGraph m = gi.multiugraph();
    CHECK(m.mult.at({0, 1}) == parse_nat("123456789012345678901234567890"));
}

TEST_CASE("round trips") {
    SUBCASE("graph") {
        std::string text =
            R"({"type":"digraph","n":3,"edges":[[0,1],[1,2]],"mult":["5","7"],"k":"10","r":"3"})";
        auto inst = parse_instance(text);
        auto& gi = std::get<GraphInstance>(inst);
        auto inst2 = parse_instance(serialize(gi));
        auto& gi2 = std::get<GraphInstance>(inst2);
        CHECK(gi2.directed == gi.directed);
        CHECK(gi2.n == gi.n);
        CHECK(gi2.edges == gi.edges);
        CHECK(gi2.mult == gi.mult);
        CHECK(gi2.k == gi.k);
        CHECK(gi2.r == gi.r);
    }
    SUBCASE("packing") {
        std::string text =
            R"({"universe":3,"p":2,"q":3,"r":"2","sets":[[0,1],[1,2],[0,2]],"mult":[1,2,1]})";
        auto inst = parse_instance(text);
        auto& pi = std::get<PackingInstance>(inst);
        auto inst2 = parse_instance(serialize(pi));
        auto& pi2 = std::get<PackingInstance>(inst2);
        CHECK(pi2.universe == pi.universe);
        CHECK(pi2.p == pi.p);
        CHECK(pi2.q == pi.q);
        CHECK(pi2.r == pi.r);
        CHECK(pi2.sets == pi.sets);
        CHECK(pi2.mult == pi.mult);
    }
    SUBCASE("walk") {
        Walk w{{0, 1, 0, 1}};
        Walk w2 = parse_walk(serialize_walk(w));
        CHECK(w2.vertices == w.vertices);
    }
}

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>

#include "rsimple/graph.hpp"
#include "rsimple/nat.hpp"
#include "rsimple/packing.hpp"

namespace rsimple {

// Wire format for (multi)graph instances:
//   {"type":"digraph"|"graph","n":N,"edges":[[u,v],...]}
// optionally "mult":["<decimal>",...] aligned with edges, and decimal-string
// parameters "k" and "r".
struct GraphInstance {
    bool directed = false;
    int n = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<Nat> mult;  // empty = simple graph
    std::optional<Nat> k, r;

    Digraph digraph() const;
    UGraph ugraph() const;
    MultiDigraph multidigraph() const;
    MultiUGraph multiugraph() const;
};

using Instance = std::variant<GraphInstance, PackingInstance>;

Instance parse_instance(const std::string& json_text);
Instance parse_instance_stream(std::istream& in);

std::string serialize(const GraphInstance& inst);
std::string serialize(const PackingInstance& inst);

Walk parse_walk(const std::string& json_text);
std::string serialize_walk(const Walk& w);

}  // namespace rsimple

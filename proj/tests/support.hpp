#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "binec/codes.hpp"
#include "binec/network.hpp"

namespace binec::testing {

inline Network network_from_text(const std::string& text) {
    std::istringstream in(text);
    return parse_network(in);
}

/// C parallel edges straight from source to sink.
inline Network direct_network(std::size_t c) {
    std::string text = "net 2\nsource 0\nsink 1\n";
    for (std::size_t i = 0; i < c; ++i) text += "edge 0 1\n";
    return network_from_text(text);
}

/// C disjoint two-hop paths through relays 1..C.
inline Network paths_network(std::size_t c) {
    std::string text = "net " + std::to_string(c + 2) + "\nsource 0\nsink " + std::to_string(c + 1) + "\n";
    for (std::size_t i = 1; i <= c; ++i) text += "edge 0 " + std::to_string(i) + "\n";
    for (std::size_t i = 1; i <= c; ++i) text += "edge " + std::to_string(i) + " " + std::to_string(c + 1) + "\n";
    return network_from_text(text);
}

/// Two-path diamond with a cross edge and a shared bottleneck node; C = 2, E = 7.
inline Network diamond_network() {
    return network_from_text(R"(
net 5
source 0
sink 4
edge 0 1
edge 0 2
edge 1 2
edge 1 3
edge 2 3
edge 3 4
edge 3 4
)");
}

/// Chain source -> r1 -> ... -> sink with every hop a pair of parallel edges;
/// C = 2, E = 2 * (relays + 1). Every relay forwards on two edges, so random
/// coefficients give an MDS impulse response with high probability.
inline Network relay_network(std::size_t relays) {
    const std::size_t nodes = relays + 2;
    std::string text = "net " + std::to_string(nodes) + "\nsource 0\nsink " + std::to_string(nodes - 1) + "\n";
    for (std::size_t v = 0; v + 1 < nodes; ++v)
        for (int k = 0; k < 2; ++k) text += "edge " + std::to_string(v) + " " + std::to_string(v + 1) + "\n";
    return network_from_text(text);
}

inline FieldMatrix field_matrix(std::size_t rows, std::size_t cols, std::initializer_list<std::uint32_t> values) {
    FieldMatrix a(rows, cols);
    std::size_t i = 0;
    for (const auto v : values) {
        a(i / cols, i % cols) = FieldElem{v};
        ++i;
    }
    return a;
}

/// C=2, E=3, m=1, n=6, p=1/18: budget 1, radius 2.
inline ChannelParams desk_params() { return {2, 3, 1, 6, Rational(1, 18)}; }

inline TransferPair desk_transfer() {
    return make_transfer_pair(field_matrix(2, 3, {1, 0, 1, 0, 1, 1}), {0, 1});
}

} // namespace binec::testing

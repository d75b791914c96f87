#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <string>
#include <utility>
#include <vector>

#include "binec/gf2m.hpp"

namespace binec {

struct Edge {
    std::size_t tail;
    std::size_t head;
};

/// Directed acyclic multigraph with one source and one sink. Edge order is
/// global: edge i carries packet i and owns rows m*i .. m*i+m-1 of Z.
struct Network {
    std::size_t num_nodes = 0;
    std::size_t source = 0;
    std::size_t sink = 0;
    std::vector<Edge> edges;
};

/// Parses the line format `net N` / `source s` / `sink t` / `edge u v`.
/// Blank lines and `#` comments are skipped; anything else is rejected.
Network parse_network(std::istream& in);
Network load_network(const std::string& path);
std::string format_network(const Network& net);

struct NetworkShape {
    std::size_t capacity; // C
    std::size_t edges;    // E
};

/**
 * Checks acyclicity and the normalization the channel model relies on:
 * unit-capacity max-flow from source to sink equals the source out-degree
 * and the sink in-degree, the source has no incoming edges and the sink no
 * outgoing ones. Throws std::invalid_argument describing the violation.
 */
NetworkShape validate_network(const Network& net);

/// Topological order of the nodes; throws if the graph has a cycle.
std::vector<std::size_t> topological_order(const Network& net);

/// Unit-capacity max-flow value (Edmonds-Karp).
std::size_t max_flow(const Network& net);

/// Network plus the coding coefficient f_{e',e} of every adjacent edge pair.
struct CodedNetwork {
    Network network;
    Field field;
    /// inputs[e] lists the edges entering tail(e), in edge order.
    std::vector<std::vector<std::size_t>> inputs;
    /// coeffs[e][k] = f_{inputs[e][k], e}.
    std::vector<std::vector<FieldElem>> coeffs;
    std::uint64_t seed = 0;

    FieldElem coefficient(std::size_t from_edge, std::size_t to_edge) const;
};

/// Draws every coefficient i.i.d. uniform over the field, deterministic in seed.
CodedNetwork assign_coefficients(const Network& net, const Field& field, std::uint64_t seed);

/// Transfer matrix T (C x C) and impulse-response matrix T-hat (C x E);
/// T is the T-hat columns at source_edges.
struct TransferPair {
    FieldMatrix transfer;
    FieldMatrix impulse;
    std::vector<std::size_t> source_edges;

    std::size_t capacity() const { return impulse.rows(); }
    std::size_t num_edges() const { return impulse.cols(); }
};

TransferPair make_transfer_pair(FieldMatrix impulse, std::vector<std::size_t> source_edges);

/// Propagates unit injections in topological order.
TransferPair compute_transfer(const CodedNetwork& cn);

/// True iff every C x C column submatrix of `impulse` is invertible.
bool check_every_square_submatrix_invertible(const Field& field, const FieldMatrix& impulse);

struct MdsSample {
    CodedNetwork coded;
    TransferPair transfer;
    std::size_t attempts;
};

/// Resamples coefficients with sub-seeds derive_seed(seed, attempt) until the
/// impulse-response matrix is MDS. Throws GuardError after max_retries.
MdsSample sample_until_mds(const Network& net, const Field& field, std::uint64_t seed, std::size_t max_retries);

/// Cauchy impulse-response matrix 1/(x_i + y_j) with x_i = i, y_j = C + j;
/// every square submatrix is nonsingular. Requires 2^m >= C + E. The first C
/// columns are the source edges.
TransferPair cauchy_transfer(const Field& field, std::size_t capacity, std::size_t edges);

/// Uniformly random C x E matrices, resampled until MDS (for fields too small
/// for a Cauchy construction). Source edges are the first C columns.
TransferPair random_mds_transfer(const Field& field, std::size_t capacity, std::size_t edges, std::uint64_t seed,
                                 std::size_t max_retries);

/// Edge-by-edge simulation over the field: packet on e is the coded
/// combination of its inputs (or row i of X for the i-th source edge) plus
/// row e of Z. Returns the C x n matrix of sink packets in edge order.
FieldMatrix simulate_field(const CodedNetwork& cn, const FieldMatrix& x, const FieldMatrix& z);

/// Same simulation over GF(2) with lifted coefficients; x is Cm x n, z is Em x n.
BitMatrix simulate_binary(const CodedNetwork& cn, const BitMatrix& x, const BitMatrix& z);

} // namespace binec

#include "binec/network.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "binec/errors.hpp"

namespace binec {

namespace {

std::size_t parse_id(const std::string& token, std::size_t line) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(token, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != token.size() || token.empty() || token.front() == '-')
        throw std::invalid_argument("network line " + std::to_string(line) + ": bad integer '" + token + "'");
    return static_cast<std::size_t>(v);
}

std::vector<std::size_t> edges_with(const Network& net, bool tail_side, std::size_t node) {
    std::vector<std::size_t> out;
    for (std::size_t e = 0; e < net.edges.size(); ++e)
        if ((tail_side ? net.edges[e].tail : net.edges[e].head) == node) out.push_back(e);
    return out;
}

// Edges sorted by the topological rank of their tail, ties by edge index.
std::vector<std::size_t> edge_schedule(const Network& net) {
    const auto order = topological_order(net);
    std::vector<std::size_t> rank(net.num_nodes);
    for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;
    std::vector<std::size_t> sched(net.edges.size());
    for (std::size_t e = 0; e < sched.size(); ++e) sched[e] = e;
    std::stable_sort(sched.begin(), sched.end(),
                     [&](std::size_t a, std::size_t b) { return rank[net.edges[a].tail] < rank[net.edges[b].tail]; });
    return sched;
}

bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
    const std::size_t k = idx.size();
    for (std::size_t i = k; i-- > 0;) {
        if (idx[i] < n - k + i) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

} // namespace

Network parse_network(std::istream& in) {
    Network net;
    bool have_header = false, have_source = false, have_sink = false;
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::istringstream ls(raw);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        const auto expect = [&](std::size_t n) {
            if (tok.size() != n)
                throw std::invalid_argument("network line " + std::to_string(line) + ": '" + tok[0] + "' expects " +
                                            std::to_string(n - 1) + " argument(s)");
        };
        if (tok[0] == "net") {
            expect(2);
            if (have_header) throw std::invalid_argument("network line " + std::to_string(line) + ": duplicate 'net'");
            net.num_nodes = parse_id(tok[1], line);
            have_header = true;
        } else if (!have_header) {
            throw std::invalid_argument("network line " + std::to_string(line) + ": 'net <num_nodes>' must come first");
        } else if (tok[0] == "source") {
            expect(2);
            net.source = parse_id(tok[1], line);
            have_source = true;
        } else if (tok[0] == "sink") {
            expect(2);
            net.sink = parse_id(tok[1], line);
            have_sink = true;
        } else if (tok[0] == "edge") {
            expect(3);
            net.edges.push_back({parse_id(tok[1], line), parse_id(tok[2], line)});
        } else {
            throw std::invalid_argument("network line " + std::to_string(line) + ": unknown directive '" + tok[0] + "'");
        }
    }
    if (!have_header || !have_source || !have_sink)
        throw std::invalid_argument("network file needs 'net', 'source' and 'sink' directives");
    const auto check = [&](std::size_t id) {
        if (id >= net.num_nodes)
            throw std::invalid_argument("node id " + std::to_string(id) + " out of range for net " +
                                        std::to_string(net.num_nodes));
    };
    check(net.source);
    check(net.sink);
    for (const auto& e : net.edges) {
        check(e.tail);
        check(e.head);
    }
    return net;
}

Network load_network(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open network file '" + path + "'");
    return parse_network(in);
}

std::string format_network(const Network& net) {
    std::ostringstream os;
    os << "net " << net.num_nodes << "\nsource " << net.source << "\nsink " << net.sink << '\n';
    for (const auto& e : net.edges) os << "edge " << e.tail << ' ' << e.head << '\n';
    return os.str();
}

std::vector<std::size_t> topological_order(const Network& net) {
    std::vector<std::size_t> indeg(net.num_nodes, 0);
    std::vector<std::vector<std::size_t>> out(net.num_nodes);
    for (const auto& e : net.edges) {
        ++indeg[e.head];
        out[e.tail].push_back(e.head);
    }
    std::queue<std::size_t> ready;
    for (std::size_t v = 0; v < net.num_nodes; ++v)
        if (indeg[v] == 0) ready.push(v);
    std::vector<std::size_t> order;
    order.reserve(net.num_nodes);
    while (!ready.empty()) {
        const std::size_t v = ready.front();
        ready.pop();
        order.push_back(v);
        for (const auto w : out[v])
            if (--indeg[w] == 0) ready.push(w);
    }
    if (order.size() != net.num_nodes) throw std::invalid_argument("network has a directed cycle");
    return order;
}

std::size_t max_flow(const Network& net) {
    // Residual graph: forward arc 2i, reverse arc 2i+1.
    const std::size_t n = net.num_nodes;
    std::vector<std::vector<std::size_t>> adj(n);
    std::vector<std::size_t> to(2 * net.edges.size());
    std::vector<int> cap(2 * net.edges.size());
    for (std::size_t i = 0; i < net.edges.size(); ++i) {
        to[2 * i] = net.edges[i].head;
        to[2 * i + 1] = net.edges[i].tail;
        cap[2 * i] = 1;
        cap[2 * i + 1] = 0;
        adj[net.edges[i].tail].push_back(2 * i);
        adj[net.edges[i].head].push_back(2 * i + 1);
    }
    constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
    std::size_t flow = 0;
    for (;;) {
        std::vector<std::size_t> via(n, kNone);
        std::queue<std::size_t> q;
        q.push(net.source);
        std::vector<bool> seen(n, false);
        seen[net.source] = true;
        while (!q.empty() && !seen[net.sink]) {
            const std::size_t v = q.front();
            q.pop();
            for (const auto a : adj[v]) {
                if (cap[a] == 0 || seen[to[a]]) continue;
                seen[to[a]] = true;
                via[to[a]] = a;
                q.push(to[a]);
            }
        }
        if (!seen[net.sink]) break;
        for (std::size_t v = net.sink; v != net.source; v = to[via[v] ^ 1U]) {
            --cap[via[v]];
            ++cap[via[v] ^ 1U];
        }
        ++flow;
    }
    return flow;
}

NetworkShape validate_network(const Network& net) {
    if (net.source == net.sink) throw std::invalid_argument("source and sink must differ");
    topological_order(net);
    const std::size_t out_deg = edges_with(net, true, net.source).size();
    const std::size_t in_deg = edges_with(net, false, net.sink).size();
    if (!edges_with(net, false, net.source).empty())
        throw std::invalid_argument("source must not have incoming edges");
    if (!edges_with(net, true, net.sink).empty()) throw std::invalid_argument("sink must not have outgoing edges");
    const std::size_t cut = max_flow(net);
    if (cut == 0) throw std::invalid_argument("sink is unreachable from source");
    if (cut != out_deg || cut != in_deg)
        throw std::invalid_argument("mincut " + std::to_string(cut) + " differs from source out-degree " +
                                    std::to_string(out_deg) + " / sink in-degree " + std::to_string(in_deg) +
                                    "; add a super-node so both equal the mincut");
    return {cut, net.edges.size()};
}

FieldElem CodedNetwork::coefficient(std::size_t from_edge, std::size_t to_edge) const {
    const auto& in = inputs.at(to_edge);
    const auto it = std::find(in.begin(), in.end(), from_edge);
    if (it == in.end()) throw std::out_of_range("edges are not adjacent");
    return coeffs[to_edge][static_cast<std::size_t>(it - in.begin())];
}

CodedNetwork assign_coefficients(const Network& net, const Field& field, std::uint64_t seed) {
    CodedNetwork cn{net, field, {}, {}, seed};
    Rng rng(seed);
    cn.inputs.resize(net.edges.size());
    cn.coeffs.resize(net.edges.size());
    for (std::size_t e = 0; e < net.edges.size(); ++e) {
        cn.inputs[e] = edges_with(net, false, net.edges[e].tail);
        for (std::size_t k = 0; k < cn.inputs[e].size(); ++k)
            cn.coeffs[e].push_back(FieldElem{static_cast<std::uint32_t>(uniform_below(rng, field.order()))});
    }
    return cn;
}

TransferPair make_transfer_pair(FieldMatrix impulse, std::vector<std::size_t> source_edges) {
    if (source_edges.size() != impulse.rows())
        throw std::invalid_argument("need exactly C source edges for a C x E impulse matrix");
    TransferPair tp;
    tp.transfer = impulse.select_columns(source_edges);
    tp.impulse = std::move(impulse);
    tp.source_edges = std::move(source_edges);
    return tp;
}

TransferPair compute_transfer(const CodedNetwork& cn) {
    const Network& net = cn.network;
    const std::size_t num_edges = net.edges.size();
    // Global coding vector of each edge with respect to unit injections.
    std::vector<std::vector<FieldElem>> global(num_edges, std::vector<FieldElem>(num_edges));
    for (const auto e : edge_schedule(net)) {
        global[e][e] = FieldElem{1};
        for (std::size_t k = 0; k < cn.inputs[e].size(); ++k) {
            const FieldElem f = cn.coeffs[e][k];
            if (f.value == 0) continue;
            const auto& g_in = global[cn.inputs[e][k]];
            for (std::size_t j = 0; j < num_edges; ++j) global[e][j] = cn.field.add(global[e][j], cn.field.mul(f, g_in[j]));
        }
    }
    const auto sink_edges = edges_with(net, false, net.sink);
    FieldMatrix impulse(sink_edges.size(), num_edges);
    for (std::size_t r = 0; r < sink_edges.size(); ++r)
        for (std::size_t j = 0; j < num_edges; ++j) impulse(r, j) = global[sink_edges[r]][j];
    return make_transfer_pair(std::move(impulse), edges_with(net, true, net.source));
}

bool check_every_square_submatrix_invertible(const Field& field, const FieldMatrix& impulse) {
    const std::size_t c = impulse.rows();
    const std::size_t e = impulse.cols();
    if (c > e) throw std::invalid_argument("impulse matrix needs C <= E");
    std::vector<std::size_t> idx(c);
    for (std::size_t i = 0; i < c; ++i) idx[i] = i;
    do {
        if (!is_invertible(field, impulse.select_columns(idx))) return false;
    } while (next_combination(idx, e));
    return true;
}

MdsSample sample_until_mds(const Network& net, const Field& field, std::uint64_t seed, std::size_t max_retries) {
    if (max_retries < 1) throw std::invalid_argument("max_retries must be >= 1");
    validate_network(net);
    for (std::size_t attempt = 0; attempt < max_retries; ++attempt) {
        auto cn = assign_coefficients(net, field, attempt == 0 ? seed : derive_seed(seed, attempt));
        auto tp = compute_transfer(cn);
        if (check_every_square_submatrix_invertible(field, tp.impulse)) return {std::move(cn), std::move(tp), attempt + 1};
    }
    throw GuardError("no MDS impulse-response matrix after " + std::to_string(max_retries) +
                     " coefficient draws over GF(2^" + std::to_string(field.m()) + "); try a larger m");
}

TransferPair cauchy_transfer(const Field& field, std::size_t capacity, std::size_t edges) {
    if (capacity == 0 || capacity > edges) throw std::invalid_argument("Cauchy construction needs 1 <= C <= E");
    if (capacity + edges > field.order())
        throw GuardError("Cauchy construction needs 2^m >= C + E");
    FieldMatrix impulse(capacity, edges);
    for (std::size_t i = 0; i < capacity; ++i)
        for (std::size_t j = 0; j < edges; ++j)
            impulse(i, j) = field.inv(FieldElem{static_cast<std::uint32_t>(i ^ (capacity + j))});
    std::vector<std::size_t> sources(capacity);
    for (std::size_t i = 0; i < capacity; ++i) sources[i] = i;
    return make_transfer_pair(std::move(impulse), std::move(sources));
}

TransferPair random_mds_transfer(const Field& field, std::size_t capacity, std::size_t edges, std::uint64_t seed,
                                 std::size_t max_retries) {
    if (capacity == 0 || capacity > edges) throw std::invalid_argument("need 1 <= C <= E");
    std::vector<std::size_t> sources(capacity);
    for (std::size_t i = 0; i < capacity; ++i) sources[i] = i;
    Rng rng(seed);
    for (std::size_t attempt = 0; attempt < max_retries; ++attempt) {
        auto impulse = FieldMatrix::random(field, capacity, edges, rng);
        if (check_every_square_submatrix_invertible(field, impulse)) return make_transfer_pair(std::move(impulse), sources);
    }
    throw GuardError("no random MDS " + std::to_string(capacity) + "x" + std::to_string(edges) +
                     " matrix found over GF(2^" + std::to_string(field.m()) + ")");
}

FieldMatrix simulate_field(const CodedNetwork& cn, const FieldMatrix& x, const FieldMatrix& z) {
    const Network& net = cn.network;
    const auto sources = edges_with(net, true, net.source);
    const std::size_t n = x.cols();
    if (x.rows() != sources.size() || z.rows() != net.edges.size() || z.cols() != n)
        throw std::invalid_argument("simulate_field: shape mismatch");
    FieldMatrix packets(net.edges.size(), n);
    for (const auto e : edge_schedule(net)) {
        if (net.edges[e].tail == net.source) {
            const auto row = static_cast<std::size_t>(std::find(sources.begin(), sources.end(), e) - sources.begin());
            for (std::size_t k = 0; k < n; ++k) packets(e, k) = x(row, k);
        }
        for (std::size_t i = 0; i < cn.inputs[e].size(); ++i)
            for (std::size_t k = 0; k < n; ++k)
                packets(e, k) = cn.field.add(packets(e, k), cn.field.mul(cn.coeffs[e][i], packets(cn.inputs[e][i], k)));
        for (std::size_t k = 0; k < n; ++k) packets(e, k) = cn.field.add(packets(e, k), z(e, k));
    }
    const auto sinks = edges_with(net, false, net.sink);
    FieldMatrix y(sinks.size(), n);
    for (std::size_t r = 0; r < sinks.size(); ++r)
        for (std::size_t k = 0; k < n; ++k) y(r, k) = packets(sinks[r], k);
    return y;
}

BitMatrix simulate_binary(const CodedNetwork& cn, const BitMatrix& x, const BitMatrix& z) {
    const Network& net = cn.network;
    const std::size_t m = cn.field.m();
    const auto sources = edges_with(net, true, net.source);
    const std::size_t n = x.cols();
    if (x.rows() != sources.size() * m || z.rows() != net.edges.size() * m || z.cols() != n)
        throw std::invalid_argument("simulate_binary: shape mismatch");
    std::vector<BitMatrix> packets(net.edges.size(), BitMatrix(m, n));
    for (const auto e : edge_schedule(net)) {
        BitMatrix packet = z.block(e * m, 0, m, n);
        if (net.edges[e].tail == net.source) {
            const auto row = static_cast<std::size_t>(std::find(sources.begin(), sources.end(), e) - sources.begin());
            packet ^= x.block(row * m, 0, m, n);
        }
        for (std::size_t i = 0; i < cn.inputs[e].size(); ++i)
            packet ^= cn.field.to_matrix(cn.coeffs[e][i]) * packets[cn.inputs[e][i]];
        packets[e] = std::move(packet);
    }
    const auto sinks = edges_with(net, false, net.sink);
    BitMatrix y(sinks.size() * m, n);
    for (std::size_t r = 0; r < sinks.size(); ++r) y.set_block(r * m, 0, packets[sinks[r]]);
    return y;
}

} // namespace binec

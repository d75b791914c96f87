#include <doctest.h>

#include "binec/channel.hpp"
#include "binec/errors.hpp"
#include "binec/network.hpp"
#include "support.hpp"

using namespace binec;
using binec::testing::network_from_text;

TEST_SUITE("network") {

TEST_CASE("parse and format round trip") {
    const Network net = testing::diamond_network();
    CHECK(net.num_nodes == 5);
    CHECK(net.edges.size() == 7);
    const Network again = network_from_text(format_network(net));
    CHECK(again.edges.size() == net.edges.size());
    for (std::size_t i = 0; i < net.edges.size(); ++i) {
        CHECK(again.edges[i].tail == net.edges[i].tail);
        CHECK(again.edges[i].head == net.edges[i].head);
    }
    CHECK_THROWS_AS(network_from_text("net 2\nsource 0\nsink 1\nwire 0 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(network_from_text("net 2\nsource 0\nsink 1\nedge 0 5\n"), std::invalid_argument);
}

TEST_CASE("shape validation") {
    const NetworkShape d = validate_network(testing::diamond_network());
    CHECK(d.capacity == 2);
    CHECK(d.edges == 7);
    const NetworkShape p = validate_network(testing::paths_network(3));
    CHECK(p.capacity == 3);
    CHECK(p.edges == 6);
    CHECK(max_flow(testing::diamond_network()) == 2);

    SUBCASE("cycle") {
        CHECK_THROWS_AS(validate_network(network_from_text("net 4\nsource 0\nsink 3\nedge 0 1\nedge 1 2\nedge 2 1\n"
                                                           "edge 2 3\n")),
                        std::invalid_argument);
    }
    SUBCASE("mincut below source degree") {
        // two source edges funnel into one edge
        CHECK_THROWS_AS(validate_network(network_from_text("net 4\nsource 0\nsink 3\nedge 0 1\nedge 0 1\nedge 1 2\n"
                                                           "edge 2 3\n")),
                        std::invalid_argument);
    }
    SUBCASE("sink in-degree above mincut") {
        CHECK_THROWS_AS(validate_network(network_from_text("net 3\nsource 0\nsink 2\nedge 0 1\nedge 1 2\nedge 1 2\n")),
                        std::invalid_argument);
    }
}

TEST_CASE("topological order respects every edge") {
    const Network net = testing::diamond_network();
    const auto order = topological_order(net);
    std::vector<std::size_t> pos(net.num_nodes);
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
    for (const auto& e : net.edges) CHECK(pos[e.tail] < pos[e.head]);
}

TEST_CASE("transfer of a hand-coded diamond") {
    // With every coefficient 1 over GF(2): a->c carries x1, b->c carries x1 + x2,
    // so both sink edges carry x2.
    const Field f(1);
    const Network net = testing::diamond_network();
    CodedNetwork cn = assign_coefficients(net, f, 1);
    for (auto& row : cn.coeffs)
        for (auto& c : row) c = FieldElem{1};
    const TransferPair tp = compute_transfer(cn);
    CHECK(tp.transfer == testing::field_matrix(2, 2, {0, 1, 0, 1}));
    CHECK(tp.source_edges == std::vector<std::size_t>{0, 1});
    CHECK(tp.impulse(0, 0) == FieldElem{0});
    CHECK(tp.impulse(0, 1) == FieldElem{1});
    CHECK(tp.impulse(0, 5) == FieldElem{1});
    CHECK(tp.impulse(0, 6) == FieldElem{0});
    CHECK(tp.impulse(1, 6) == FieldElem{1});
}

TEST_CASE("edge-by-edge simulation equals T X + T-hat Z") {
    struct Case {
        Network net;
        unsigned m;
    };
    const std::vector<Case> cases = {
        {testing::direct_network(3), 3}, {testing::paths_network(2), 2}, {testing::diamond_network(), 4}};
    for (const auto& cs : cases) {
        const Field f(cs.m);
        const CodedNetwork cn = assign_coefficients(cs.net, f, 99);
        const TransferPair tp = compute_transfer(cn);
        const std::size_t c = tp.capacity();
        const std::size_t e = tp.num_edges();
        Rng rng(7);
        for (int t = 0; t < 100; ++t) {
            const std::size_t n = 1 + uniform_below(rng, 5);
            const auto x = FieldMatrix::random(f, c, n, rng);
            const auto z = FieldMatrix::random(f, e, n, rng);
            const auto expected = add(multiply(f, tp.transfer, x), multiply(f, tp.impulse, z));
            REQUIRE(simulate_field(cn, x, z) == expected);

            const BitMatrix xb = symbols_to_bits(f, x);
            const BitMatrix zb = symbols_to_bits(f, z);
            const BitMatrix yb = symbols_to_bits(f, expected);
            REQUIRE(simulate_binary(cn, xb, zb) == yb);
            REQUIRE(transmit(tp, f, xb, zb) == yb);
            REQUIRE(transmit_field(tp, f, xb, zb) == yb);
        }
    }
}

TEST_CASE("MDS checks") {
    const Field f(3);
    const TransferPair cauchy = cauchy_transfer(f, 3, 5);
    CHECK(check_every_square_submatrix_invertible(f, cauchy.impulse));
    CHECK(cauchy.transfer == cauchy.impulse.select_columns(cauchy.source_edges));
    CHECK_FALSE(check_every_square_submatrix_invertible(f, testing::field_matrix(2, 3, {1, 1, 0, 2, 2, 1})));
    CHECK_THROWS(cauchy_transfer(f, 4, 5));

    const Field f1(1);
    CHECK(check_every_square_submatrix_invertible(f1, testing::desk_transfer().impulse));
    const TransferPair r = random_mds_transfer(f1, 2, 3, 5, 64);
    CHECK(check_every_square_submatrix_invertible(f1, r.impulse));
    CHECK_THROWS_AS(random_mds_transfer(f1, 2, 4, 5, 64), GuardError);
}

TEST_CASE("an edge into a single-output node is never MDS") {
    // Its impulse column is a multiple of the out-edge's column.
    const Field f(8);
    for (const Network& net : {testing::diamond_network(), testing::paths_network(2)})
        for (std::uint64_t seed = 0; seed < 20; ++seed)
            CHECK_FALSE(check_every_square_submatrix_invertible(f, compute_transfer(assign_coefficients(net, f, seed)).impulse));
}

TEST_CASE("MDS resampling is deterministic and bounded") {
    const Field f(4);
    const Network net = testing::relay_network(2);
    const MdsSample a = sample_until_mds(net, f, 42, 64);
    const MdsSample b = sample_until_mds(net, f, 42, 64);
    CHECK(a.attempts == b.attempts);
    CHECK(a.transfer.impulse == b.transfer.impulse);
    CHECK(check_every_square_submatrix_invertible(f, a.transfer.impulse));
    // Six edges cannot have pairwise independent columns over GF(2).
    CHECK_THROWS_AS(sample_until_mds(net, Field(1), 42, 16), GuardError);
    CHECK_THROWS_AS(sample_until_mds(testing::diamond_network(), f, 42, 16), GuardError);
}

} // TEST_SUITE

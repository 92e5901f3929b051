#include "unicrit/newton.hpp"
#include "unicrit/errors.hpp"
#include "unicrit/iterates.hpp"

#include <doctest.h>

#include <map>
#include <random>

using namespace unicrit;

namespace {

// Exact-division check over Q, independent of the library's internals.
bool q_check_divides(const std::vector<Int>& g, const std::vector<Int>& f) {
    std::vector<Rat> rem(f.begin(), f.end());
    while (!rem.empty() && rem.back() == 0) rem.pop_back();
    std::vector<Rat> div(g.begin(), g.end());
    while (!div.empty() && div.back() == 0) div.pop_back();
    if (div.empty()) return rem.empty();
    while (rem.size() >= div.size()) {
        Rat q = rem.back() / div.back();
        std::size_t shift = rem.size() - div.size();
        for (std::size_t i = 0; i < div.size(); ++i) rem[shift + i] -= q * div[i];
        while (!rem.empty() && rem.back() == 0) rem.pop_back();
    }
    return rem.empty();
}

std::vector<Int> random_poly(std::mt19937_64& rng, unsigned degree, long bound) {
    std::vector<Int> f(degree + 1);
    for (auto& c : f) c = long(rng() % (2 * bound + 1)) - bound;
    if (f[0] == 0) f[0] = 1;
    if (f.back() == 0) f.back() = 1;
    return f;
}

std::vector<Int> poly_mul(const std::vector<Int>& a, const std::vector<Int>& b) {
    std::vector<Int> out(a.size() + b.size() - 1, Int(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

} // namespace

TEST_CASE("newton polygon worked examples") {
    auto h1 = newton_polygon({-4, 0, 3}, 2);
    CHECK(h1.vertices == std::vector<std::pair<long, long>>{{0, 2}, {2, 0}});
    auto eis = newton_polygon({2, 0, 1}, 2);
    CHECK(eis.vertices == std::vector<std::pair<long, long>>{{0, 1}, {2, 0}});
    auto h29 = newton_polygon({-29, 0, 16}, 29);
    CHECK(h29.vertices == std::vector<std::pair<long, long>>{{0, 1}, {2, 0}});

    CHECK_THROWS_AS(newton_polygon({5}, 2), std::invalid_argument);
    CHECK_THROWS_AS(newton_polygon({0, 0, 0}, 2), std::invalid_argument);
    CHECK_THROWS_AS(newton_polygon({1, 1}, 4), std::invalid_argument);
}

TEST_CASE("newton polygon hull properties") {
    std::mt19937_64 rng(43);
    const Int primes[] = {2, 3, 5};
    for (int trial = 0; trial < 200; ++trial) {
        auto f = random_poly(rng, 2 + rng() % 7, 400);
        const Int& p = primes[rng() % 3];
        auto polygon = newton_polygon(f, p);
        // Hull endpoints are the extreme nonzero indices.
        CHECK(polygon.vertices.front() == polygon.points.front());
        CHECK(polygon.vertices.back() == polygon.points.back());
        // Slopes strictly increase.
        auto edges = polygon.edges();
        for (std::size_t k = 1; k < edges.size(); ++k) CHECK(edges[k - 1].first < edges[k].first);
        // Every point on or above the hull.
        for (const auto& [x, y] : polygon.points) {
            for (std::size_t k = 0; k + 1 < polygon.vertices.size(); ++k) {
                auto [x0, y0] = polygon.vertices[k];
                auto [x1, y1] = polygon.vertices[k + 1];
                if (x < x0 || x > x1) continue;
                // y >= line through the edge at x, kept in integers.
                CHECK((y - y0) * (x1 - x0) >= (y1 - y0) * (x - x0));
            }
        }
        // Lattice view refines the vertex set.
        auto lattice = polygon.lattice_vertices();
        CHECK(lattice.size() >= polygon.vertices.size());
        CHECK(lattice.front() == polygon.vertices.front());
        CHECK(lattice.back() == polygon.vertices.back());
    }
}

TEST_CASE("newton polygon of a product concatenates slopes") {
    std::mt19937_64 rng(47);
    const Int primes[] = {2, 3, 5};
    for (int trial = 0; trial < 120; ++trial) {
        auto f = random_poly(rng, 1 + rng() % 4, 60);
        auto g = random_poly(rng, 1 + rng() % 4, 60);
        const Int& p = primes[rng() % 3];
        auto ef = newton_polygon(f, p).edges();
        auto eg = newton_polygon(g, p).edges();
        auto eprod = newton_polygon(poly_mul(f, g), p).edges();
        // Merge the two slope multisets (slope -> total width).
        std::map<Rat, long> merged, got;
        for (const auto& [s, w] : ef) merged[s] += w;
        for (const auto& [s, w] : eg) merged[s] += w;
        for (const auto& [s, w] : eprod) got[s] += w;
        CHECK(merged == got);
    }
}

TEST_CASE("eisenstein-dumas") {
    CHECK(eisenstein_dumas({2, 0, 1}, 2));
    CHECK(!eisenstein_dumas({-4, 0, 3}, 2));     // gcd(2, 2) = 2
    CHECK(!eisenstein_dumas({4, 0, 6, 0, 9}, 3)); // flat start: v_3(4) = 0
    CHECK(eisenstein_dumas({-29, 0, 16}, 29));
    CHECK(!eisenstein_dumas({2, 2, 1, 0, 2, 1}, 2)); // hull has two edges
    CHECK_THROWS_AS(eisenstein_dumas({0, 1, 1}, 2), std::invalid_argument);
}

TEST_CASE("base irreducibility") {
    CHECK(base_irreducibility(2, make_rational(-4, 3)));
    CHECK(!base_irreducibility(2, make_rational(-9, 16)));
    CHECK(!base_irreducibility(4, Rat(4))); // x^4 + 4 = (x^2+2x+2)(x^2-2x+2)
    CHECK(base_irreducibility(2, Rat(2)));
    CHECK(!base_irreducibility(3, Rat(-8))); // x^3 - 8
    CHECK(base_irreducibility(6, Rat(3)));
    CHECK(!base_irreducibility(6, make_rational(-64, 729))); // -c = (2/3)^6, a square and a cube
    CHECK_THROWS_AS(base_irreducibility(2, Rat(0)), std::invalid_argument);
}

TEST_CASE("quadratic base irreducibility is the square test") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 100; ++trial) {
        Rat r = make_rational(long(rng() % 30) + 1, long(rng() % 12) + 1);
        // -c a square forces reducibility, and the converse.
        CHECK(!base_irreducibility(2, Rat(-r * r)));
        Rat c = make_rational(long(rng() % 200) - 100, long(rng() % 40) + 1);
        if (c == 0) continue;
        bool square = is_pth_power_rational(Rat(-c), 2);
        CHECK(base_irreducibility(2, c) == !square);
    }
}

TEST_CASE("stability certificates") {
    auto cert = stability_certificate(2, make_rational(3, 5));
    REQUIRE(cert.has_value());
    CHECK(cert->p == 3);
    CHECK(cert->e == 1);

    CHECK(!stability_certificate(2, make_rational(-4, 3)).has_value());

    auto twelve = stability_certificate(2, make_rational(12, 7));
    REQUIRE(twelve.has_value());
    CHECK(twelve->p == 3);
    CHECK(twelve->e == 1);

    CHECK(!stability_certificate(2, Rat(1)).has_value());
    CHECK(!stability_certificate(3, Rat(-8)).has_value());
    CHECK_THROWS_AS(stability_certificate(2, Rat(0)), std::invalid_argument);
}

TEST_CASE("certificate implies Eisenstein-Dumas shape for iterates") {
    std::mt19937_64 rng(53);
    int found = 0;
    while (found < 25) {
        long a = long(rng() % 41) - 20;
        long b = long(rng() % 20) + 1;
        if (a == 0) continue;
        Rat c = make_rational(a, b);
        auto cert = stability_certificate(2, c);
        if (!cert) continue;
        ++found;
        CHECK(base_irreducibility(2, c));
        for (unsigned long n = 1; n <= 3; ++n) {
            auto h = cleared_iterate(2, num(c), den(c), n);
            CHECK(eisenstein_dumas(h.dense(), cert->p));
        }
    }
}

TEST_CASE("irreducibility oracle worked examples") {
    // Cleared second iterate of x^2 - 4/3, which splits.
    auto res = irreducibility_oracle({4, 0, -24, 0, 9});
    REQUIRE(res.outcome == OracleOutcome::reducible);
    REQUIRE(res.witness.has_value());
    CHECK(res.witness->factor == std::vector<Int>{2, -6, 3});

    CHECK(irreducibility_oracle({1, 0, 0, 0, 1}).outcome == OracleOutcome::irreducible);
    CHECK(irreducibility_oracle({-29, 0, 16}).outcome == OracleOutcome::irreducible);

    // Repeated factor.
    auto sq = irreducibility_oracle({1, 2, 1});
    REQUIRE(sq.outcome == OracleOutcome::reducible);
    CHECK(sq.witness->factor == std::vector<Int>{1, 1});

    // Rational root with denominator: 2x - 1 divides.
    auto half = irreducibility_oracle({-1, 2, -1, 2}); // (2x-1)(x^2+1)
    REQUIRE(half.outcome == OracleOutcome::reducible);
    CHECK(q_check_divides(half.witness->factor, std::vector<Int>{-1, 2, -1, 2}));

    // Degree cap.
    std::vector<Int> too_big(20, Int(1));
    CHECK_THROWS_AS(irreducibility_oracle(too_big), budget_exceeded);
    CHECK_THROWS_AS(irreducibility_oracle({5}), std::invalid_argument);
}

TEST_CASE("oracle witnesses always divide") {
    std::mt19937_64 rng(59);
    int reducible_seen = 0;
    for (int trial = 0; trial < 120; ++trial) {
        unsigned deg = 2 + rng() % 5;
        std::vector<Int> f;
        if (rng() & 1) {
            f = random_poly(rng, deg, 12);
        } else {
            f = poly_mul(random_poly(rng, 1 + deg / 2, 6), random_poly(rng, 1 + deg / 2, 6));
        }
        auto res = irreducibility_oracle(f);
        if (res.outcome == OracleOutcome::reducible) {
            ++reducible_seen;
            REQUIRE(res.witness.has_value());
            const auto& w = res.witness->factor;
            CHECK(w.size() >= 2);
            CHECK(w.size() < f.size());
            CHECK(q_check_divides(w, f));
        }
    }
    CHECK(reducible_seen > 10);
}

TEST_CASE("eisenstein-dumas certificates never contradict the oracle") {
    std::mt19937_64 rng(61);
    int certified = 0;
    for (int trial = 0; trial < 200; ++trial) {
        // Slanted-hull polynomials: v(a_0) = m with gcd(m, k) = 1,
        // interior valuations kept at least m, unit leading term.
        const long p = (rng() & 1) ? 2 : 3;
        unsigned k = 2 + rng() % 5;
        unsigned m = 1 + rng() % 3;
        if (std::gcd(k, m) != 1) continue;
        Int pm = 1;
        for (unsigned i = 0; i < m; ++i) pm *= p;
        std::vector<Int> f(k + 1);
        f[0] = pm * (long(rng() % 9) * p + 1) * ((rng() & 1) ? 1 : -1);
        for (unsigned i = 1; i < k; ++i) f[i] = pm * (long(rng() % 7) - 3);
        Int lead = long(rng() % 50) + 1;
        while (lead % p == 0) lead += 1;
        f[k] = lead;
        REQUIRE(eisenstein_dumas(f, p));
        ++certified;
        CHECK(irreducibility_oracle(f).outcome != OracleOutcome::reducible);
    }
    CHECK(certified >= 100);
}

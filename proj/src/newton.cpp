#include "unicrit/newton.hpp"

#include "unicrit/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace unicrit {

namespace {

// Strictly-lower-hull turn test: keep b only while a->b->c turns left.
bool pops_b(const std::pair<long, long>& a, const std::pair<long, long>& b,
            const std::pair<long, long>& c) {
    // cross <= 0 means b is on or above segment a-c.
    long long cross = static_cast<long long>(b.first - a.first) * (c.second - a.second) -
                      static_cast<long long>(b.second - a.second) * (c.first - a.first);
    return cross <= 0;
}

} // namespace

NewtonPolygon newton_polygon(const std::vector<Int>& coeffs, const Int& p) {
    if (p < 2 || !is_prime(p)) throw std::invalid_argument("newton_polygon: p must be prime");
    NewtonPolygon polygon;
    polygon.p = p;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] == 0) continue;
        polygon.points.emplace_back(static_cast<long>(i), valuation(p, coeffs[i]));
    }
    if (polygon.points.size() < 2)
        throw std::invalid_argument("newton_polygon: need at least two nonzero coefficients");

    for (const auto& pt : polygon.points) {
        auto& hull = polygon.vertices;
        while (hull.size() >= 2 && pops_b(hull[hull.size() - 2], hull.back(), pt))
            hull.pop_back();
        hull.push_back(pt);
    }
    return polygon;
}

std::vector<std::pair<long, long>> NewtonPolygon::lattice_vertices() const {
    std::vector<std::pair<long, long>> out;
    for (std::size_t k = 0; k + 1 < vertices.size(); ++k) {
        const auto [x0, y0] = vertices[k];
        const auto [x1, y1] = vertices[k + 1];
        long g = std::gcd(x1 - x0, std::abs(y1 - y0));
        for (long t = 0; t < g; ++t)
            out.emplace_back(x0 + t * (x1 - x0) / g, y0 + t * (y1 - y0) / g);
    }
    if (!vertices.empty()) out.push_back(vertices.back());
    return out;
}

std::vector<std::pair<Rat, long>> NewtonPolygon::edges() const {
    std::vector<std::pair<Rat, long>> out;
    for (std::size_t k = 0; k + 1 < vertices.size(); ++k) {
        long run = vertices[k + 1].first - vertices[k].first;
        Rat slope(vertices[k + 1].second - vertices[k].second, run);
        slope.canonicalize();
        out.emplace_back(slope, run);
    }
    return out;
}

bool eisenstein_dumas(const std::vector<Int>& coeffs, const Int& p) {
    std::vector<Int> trimmed = coeffs;
    while (!trimmed.empty() && trimmed.back() == 0) trimmed.pop_back();
    if (trimmed.size() < 2 || trimmed[0] == 0)
        throw std::invalid_argument("eisenstein_dumas: need nonzero constant and leading terms");
    NewtonPolygon polygon = newton_polygon(trimmed, p);
    if (polygon.vertices.size() != 2) return false;
    const auto [x0, m] = polygon.vertices.front();
    const auto [k, yk] = polygon.vertices.back();
    if (x0 != 0 || yk != 0 || m <= 0) return false;
    return std::gcd(k, m) == 1;
}

bool base_irreducibility(unsigned long d, const Rat& c) {
    if (d < 2) throw std::invalid_argument("base_irreducibility: d must be >= 2");
    if (c == 0) throw std::invalid_argument("base_irreducibility: c must be nonzero");
    unsigned long rest = d;
    for (unsigned long p = 2; p * p <= rest; ++p) {
        if (rest % p) continue;
        if (is_pth_power_rational(Rat(-c), p)) return false;
        while (rest % p == 0) rest /= p;
    }
    if (rest > 1 && is_pth_power_rational(Rat(-c), rest)) return false;
    if (d % 4 == 0) {
        Rat quarter = c / 4;
        quarter.canonicalize();
        if (is_pth_power_rational(quarter, 4)) return false;
    }
    return true;
}

std::optional<StabilityCertificate> stability_certificate(unsigned long d, const Rat& c,
                                                          const FactorBudget& budget) {
    if (c == 0) throw std::invalid_argument("stability_certificate: c must be nonzero");
    const Int& c1 = num(c);
    Factorization f = factor(c1, budget);
    for (const auto& [p, e] : f.factors)
        if (std::gcd(static_cast<unsigned long>(e), d) == 1)
            return StabilityCertificate{p, e};
    if (!f.complete)
        throw incomplete_factorization("stability_certificate: c1 not fully factored");
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Irreducibility oracle: degree patterns modulo good primes, then a
// Kronecker-style interpolation search for an explicit integer factor.
// ---------------------------------------------------------------------------

namespace {

using FpPoly = std::vector<std::uint64_t>; // degree-indexed, coefficients mod p

void fp_trim(FpPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

std::uint64_t fp_pow(std::uint64_t base, std::uint64_t e, std::uint64_t p) {
    std::uint64_t out = 1;
    base %= p;
    while (e) {
        if (e & 1) out = out * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return out;
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    FpPoly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % p;
    }
    fp_trim(out);
    return out;
}

// Remainder of a modulo monic m.
FpPoly fp_mod(FpPoly a, const FpPoly& m, std::uint64_t p) {
    fp_trim(a);
    while (a.size() >= m.size()) {
        std::uint64_t q = a.back();
        std::size_t shift = a.size() - m.size();
        for (std::size_t i = 0; i < m.size(); ++i)
            a[shift + i] = (a[shift + i] + p * p - q * m[i] % p) % p;
        fp_trim(a);
    }
    return a;
}

void fp_make_monic(FpPoly& f, std::uint64_t p) {
    if (f.empty() || f.back() == 1) return;
    std::uint64_t inv = fp_pow(f.back(), p - 2, p);
    for (auto& c : f) c = c * inv % p;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, std::uint64_t p) {
    fp_trim(a);
    fp_trim(b);
    while (!b.empty()) {
        fp_make_monic(b, p);
        FpPoly r = fp_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    fp_make_monic(a, p);
    return a;
}

FpPoly fp_derivative(const FpPoly& f, std::uint64_t p) {
    FpPoly out;
    for (std::size_t i = 1; i < f.size(); ++i) out.push_back(f[i] * (i % p) % p);
    fp_trim(out);
    return out;
}

FpPoly fp_powmod(FpPoly base, std::uint64_t e, const FpPoly& m, std::uint64_t p) {
    FpPoly out{1};
    base = fp_mod(std::move(base), m, p);
    while (e) {
        if (e & 1) out = fp_mod(fp_mul(out, base, p), m, p);
        base = fp_mod(fp_mul(base, base, p), m, p);
        e >>= 1;
    }
    return out;
}

FpPoly fp_divexact(const FpPoly& a, const FpPoly& b, std::uint64_t p) {
    // a = q*b with b monic.
    FpPoly rem = a, q(a.size() - b.size() + 1, 0);
    while (rem.size() >= b.size()) {
        std::uint64_t lead = rem.back();
        std::size_t shift = rem.size() - b.size();
        q[shift] = lead;
        for (std::size_t i = 0; i < b.size(); ++i)
            rem[shift + i] = (rem[shift + i] + p * p - lead * b[i] % p) % p;
        fp_trim(rem);
        if (rem.empty()) break;
    }
    return q;
}

// Irreducible-factor degree multiset of a squarefree monic f mod p.
std::vector<unsigned> fp_factor_degrees(FpPoly f, std::uint64_t p) {
    std::vector<unsigned> degrees;
    FpPoly h{0, 1}; // x
    unsigned i = 0;
    while (f.size() > 1) {
        ++i;
        if (2 * i > f.size() - 1) {
            degrees.push_back(static_cast<unsigned>(f.size() - 1));
            break;
        }
        h = fp_powmod(std::move(h), p, f, p);
        FpPoly hx = h;
        // h - x
        if (hx.size() < 2) hx.resize(2, 0);
        hx[1] = (hx[1] + p - 1) % p;
        fp_trim(hx);
        FpPoly g = hx.empty() ? f : fp_gcd(f, hx, p);
        if (g.size() > 1) {
            unsigned count = static_cast<unsigned>((g.size() - 1) / i);
            for (unsigned k = 0; k < count; ++k) degrees.push_back(i);
            f = fp_divexact(f, g, p);
            fp_make_monic(f, p);
            h = fp_mod(std::move(h), f, p);
        }
    }
    return degrees;
}

// --- exact polynomial helpers over Q ------------------------------------

using QPoly = std::vector<Rat>;

void q_trim(QPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

QPoly q_from_int(const std::vector<Int>& f) {
    QPoly out;
    out.reserve(f.size());
    for (const auto& c : f) out.emplace_back(c);
    q_trim(out);
    return out;
}

QPoly q_mod(QPoly a, const QPoly& b) {
    q_trim(a);
    while (a.size() >= b.size()) {
        Rat q = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= q * b[i];
        q_trim(a);
    }
    return a;
}

// Remainder of integer-poly division a / b over Q; zero iff b | a.
bool q_divides(const std::vector<Int>& b, const std::vector<Int>& a) {
    QPoly qa = q_from_int(a), qb = q_from_int(b);
    if (qb.empty()) return qa.empty();
    return q_mod(std::move(qa), qb).empty();
}

QPoly q_gcd(QPoly a, QPoly b) {
    q_trim(a);
    q_trim(b);
    while (!b.empty()) {
        QPoly r = q_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        Rat lead = a.back();
        for (auto& c : a) c /= lead;
    }
    return a;
}

std::vector<Int> clear_denominators(const QPoly& f) {
    Int lcm_den = 1;
    for (const auto& c : f) lcm_den = lcm(lcm_den, den(c));
    std::vector<Int> out;
    out.reserve(f.size());
    for (const auto& c : f) out.push_back(Int(num(c) * (lcm_den / den(c))));
    return out;
}

void make_primitive(std::vector<Int>& f) {
    Int content = 0;
    for (const auto& c : f) content = gcd(content, c);
    if (content == 0) return;
    if (f.back() < 0) content = -content;
    for (auto& c : f) c /= content;
}

Int eval_at(const std::vector<Int>& f, long x) {
    Int out = 0;
    for (std::size_t i = f.size(); i-- > 0;) out = out * x + f[i];
    return out;
}

// Every divisor of the factored value, both signs, ascending by
// absolute value with the positive one first.
std::vector<Int> all_divisors(const Factorization& f) {
    std::vector<Int> out{Int(1)};
    for (const auto& [p, e] : f.factors) {
        const std::size_t existing = out.size();
        Int pe = 1;
        for (unsigned long k = 1; k <= e; ++k) {
            pe *= p;
            for (std::size_t i = 0; i < existing; ++i) out.push_back(out[i] * pe);
        }
    }
    std::sort(out.begin(), out.end());
    std::vector<Int> signed_out;
    signed_out.reserve(out.size() * 2);
    for (const auto& v : out) {
        signed_out.push_back(v);
        signed_out.push_back(-v);
    }
    return signed_out;
}

} // namespace

OracleResult irreducibility_oracle(const std::vector<Int>& coeffs, const OracleBudget& budget) {
    std::vector<Int> f = coeffs;
    while (!f.empty() && f.back() == 0) f.pop_back();
    if (f.size() < 2)
        throw std::invalid_argument("irreducibility_oracle: need degree >= 1");
    const unsigned deg = static_cast<unsigned>(f.size() - 1);
    if (deg > budget.degree_cap)
        throw budget_exceeded("irreducibility_oracle: degree exceeds the oracle cap");
    if (deg == 1) return {OracleOutcome::irreducible, std::nullopt};
    if (f[0] == 0) return {OracleOutcome::reducible, ReducibleWitness{{Int(0), Int(1)}}};

    make_primitive(f);

    // Repeated factors are factors: gcd(f, f') over Q.
    {
        QPoly qf = q_from_int(f), qd;
        for (std::size_t i = 1; i < qf.size(); ++i) qd.push_back(qf[i] * Rat(static_cast<long>(i)));
        QPoly g = q_gcd(qf, qd);
        if (g.size() > 1) {
            std::vector<Int> witness = clear_denominators(g);
            make_primitive(witness);
            return {OracleOutcome::reducible, ReducibleWitness{std::move(witness)}};
        }
    }

    // Factor-degree patterns modulo good primes: odd behaviour (p | lc
    // or a non-squarefree reduction) disqualifies a prime, since the
    // pattern of a bad reduction constrains nothing.
    std::uint32_t possible = (std::uint32_t(1) << (deg + 1)) - 1; // degrees 0..deg
    unsigned used_primes = 0;
    for (unsigned long p = 2; used_primes < budget.modular_primes && p < 1000; ++p) {
        if (!is_prime(Int(p))) continue;
        if (f.back() % p == 0) continue;
        std::vector<unsigned> pattern;
        {
            FpPoly fp;
            for (const auto& c : f) {
                Int r = c % p;
                if (r < 0) r += p;
                fp.push_back(r.get_ui());
            }
            fp_trim(fp);
            FpPoly deriv = fp_derivative(fp, p);
            if (deriv.empty()) continue;
            fp_make_monic(fp, p);
            if (fp_gcd(fp, deriv, p).size() != 1) continue; // not squarefree mod p
            pattern = fp_factor_degrees(std::move(fp), p);
        }
        ++used_primes;
        if (pattern.size() == 1) return {OracleOutcome::irreducible, std::nullopt};
        std::uint32_t sums = 1; // subset sums of the degree multiset
        for (unsigned dgr : pattern) sums |= sums << dgr;
        possible &= sums;
        if ((possible & ~((std::uint32_t(1) << deg) | 1u)) == 0)
            return {OracleOutcome::irreducible, std::nullopt};
    }

    // Kronecker search: a degree-m factor is pinned down by its values
    // at m+1 points, each of which divides the value of f there.
    bool exhausted = false;
    auto proper = [&](unsigned m) { return (possible >> m) & 1u; };
    for (unsigned m = 1; 2 * m <= deg; ++m) {
        if (!proper(m) && !proper(deg - m)) continue;
        std::vector<long> points;
        for (long t = 0; points.size() < m + 1; ++t) {
            if (points.size() < m + 1) points.push_back(t);
            if (t > 0 && points.size() < m + 1) points.push_back(-t);
        }
        std::vector<Int> values;
        for (long x : points) {
            Int v = eval_at(f, x);
            if (v == 0) {
                // Integer root: x - x0 is already a factor.
                return {OracleOutcome::reducible, ReducibleWitness{{Int(-x), Int(1)}}};
            }
            values.push_back(v);
        }
        // Divisor lists; the first point keeps only positive divisors
        // since g and -g name the same factor.
        std::vector<std::vector<Int>> divisors;
        bool divisors_ok = true;
        std::uint64_t tuple_count = 1;
        for (std::size_t j = 0; j < values.size(); ++j) {
            Factorization fac = factor(values[j], budget.factor_budget);
            if (!fac.complete) {
                divisors_ok = false;
                break;
            }
            std::vector<Int> divs = all_divisors(fac);
            if (j == 0) std::erase_if(divs, [](const Int& v) { return v < 0; });
            tuple_count *= divs.size();
            if (tuple_count > budget.divisor_tuples) {
                divisors_ok = false;
                break;
            }
            divisors.push_back(std::move(divs));
        }
        if (!divisors_ok) {
            exhausted = true;
            continue;
        }

        // Lagrange basis over the chosen points, shared by all tuples.
        std::vector<QPoly> basis;
        for (std::size_t j = 0; j < points.size(); ++j) {
            QPoly numer{Rat(1)};
            Rat denom(1);
            for (std::size_t k = 0; k < points.size(); ++k) {
                if (k == j) continue;
                QPoly next(numer.size() + 1, Rat(0));
                for (std::size_t i = 0; i < numer.size(); ++i) {
                    next[i + 1] += numer[i];
                    next[i] -= numer[i] * Rat(points[k]);
                }
                numer = std::move(next);
                denom *= Rat(points[j] - points[k]);
            }
            for (auto& coeff : numer) coeff /= denom;
            basis.push_back(std::move(numer));
        }

        std::vector<std::size_t> odometer(points.size(), 0);
        bool done = false;
        while (!done) {
            QPoly candidate(points.size(), Rat(0));
            for (std::size_t j = 0; j < points.size(); ++j) {
                const Rat value(divisors[j][odometer[j]]);
                for (std::size_t i = 0; i < basis[j].size(); ++i)
                    candidate[i] += basis[j][i] * value;
            }
            q_trim(candidate);
            if (candidate.size() >= 2) {
                bool integral = true;
                for (const auto& cq : candidate)
                    if (den(cq) != 1) {
                        integral = false;
                        break;
                    }
                if (integral) {
                    std::vector<Int> g;
                    for (const auto& cq : candidate) g.push_back(Int(num(cq)));
                    if (f.back() % g.back() == 0 && g.size() < f.size() && q_divides(g, f)) {
                        make_primitive(g);
                        return {OracleOutcome::reducible, ReducibleWitness{std::move(g)}};
                    }
                }
            }
            // Advance the odometer, rightmost position fastest.
            for (std::size_t j = points.size(); j-- > 0;) {
                if (++odometer[j] < divisors[j].size()) break;
                odometer[j] = 0;
                if (j == 0) done = true;
            }
        }
        // Complete search at degree m rules out m and its cofactor degree.
        possible &= ~(std::uint32_t(1) << m);
        possible &= ~(std::uint32_t(1) << (deg - m));
    }

    if (!exhausted && (possible & ~((std::uint32_t(1) << deg) | 1u)) == 0)
        return {OracleOutcome::irreducible, std::nullopt};
    return {OracleOutcome::unknown, std::nullopt};
}

} // namespace unicrit

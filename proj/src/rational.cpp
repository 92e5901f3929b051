#include "unicrit/rational.hpp"

#include <stdexcept>

namespace unicrit {

Rat make_rational(const Int& a, const Int& b) {
    if (b == 0) throw std::invalid_argument("make_rational: zero denominator");
    Rat q(a, b);
    q.canonicalize();
    return q;
}

namespace {

bool is_decimal_integer(const std::string& s) {
    std::size_t i = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') return false;
    return true;
}

} // namespace

std::optional<Rat> try_parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    std::string num_part = text.substr(0, slash);
    std::string den_part = slash == std::string::npos ? "1" : text.substr(slash + 1);
    if (!is_decimal_integer(num_part) || !is_decimal_integer(den_part)) return std::nullopt;
    Int a(num_part), b(den_part);
    if (b == 0) return std::nullopt;
    return make_rational(a, b);
}

Rat parse_rational(const std::string& text) {
    auto q = try_parse_rational(text);
    if (!q) throw std::invalid_argument("parse_rational: bad rational '" + text + "'");
    return *q;
}

std::string to_string(const Rat& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

std::string to_string(const Int& n) { return n.get_str(); }

long valuation(const Int& p, const Int& n) {
    if (n == 0) throw std::invalid_argument("valuation: zero input");
    Int reduced;
    return static_cast<long>(mpz_remove(reduced.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

long valuation(const Int& p, const Rat& x) {
    if (x == 0) throw std::invalid_argument("valuation: zero input");
    // x is canonical, so p divides at most one of num, den.
    long vnum = valuation(p, x.get_num());
    if (vnum > 0) return vnum;
    return -valuation(p, x.get_den());
}

Int height(const Rat& x) {
    Int a = abs(x.get_num());
    return a > x.get_den() ? a : Int(x.get_den());
}

} // namespace unicrit

#include "chtouca/rational.hpp"

#include "chtouca/error.hpp"

#include <cctype>

namespace chtouca {

std::string to_string(const Q& x) { return x.get_str(); }
std::string to_string(const Z& x) { return x.get_str(); }

Q parse_rational(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw ParseError("empty rational");
    auto dot = s.find('.');
    try {
        if (dot != std::string::npos) {
            if (s.find('/') != std::string::npos) throw ParseError("bad rational: " + raw);
            std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
            bool neg = !ip.empty() && ip[0] == '-';
            if (!ip.empty() && (ip[0] == '-' || ip[0] == '+')) ip = ip.substr(1);
            if (ip.empty()) ip = "0";
            for (char c : ip + fp)
                if (!std::isdigit(static_cast<unsigned char>(c))) throw ParseError("bad rational: " + raw);
            Z num(ip + fp, 10);
            Z den;
            mpz_ui_pow_ui(den.get_mpz_t(), 10, fp.size());
            Q q(num, den);
            q.canonicalize();
            return neg ? Q(-q) : q;
        }
        for (size_t i = 0; i < s.size(); ++i) {
            char c = s[i];
            bool ok = std::isdigit(static_cast<unsigned char>(c)) || c == '/' ||
                      ((c == '-' || c == '+') && (i == 0 || s[i - 1] == '/'));
            if (!ok) throw ParseError("bad rational: " + raw);
        }
        if (s[0] == '+') s = s.substr(1);
        Q q;
        if (q.set_str(s, 10) != 0) throw ParseError("bad rational: " + raw);
        if (q.get_den() == 0) throw ParseError("zero denominator: " + raw);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw ParseError("bad rational: " + raw);
    }
}

Q make_q(long num, long den) {
    Q x(num, den);
    x.canonicalize();
    return x;
}

Q make_q(const Z& num, const Z& den) {
    Q x(num, den);
    x.canonicalize();
    return x;
}

Z floor_q(const Q& x) {
    Z r;
    mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return r;
}

Z ceil_q(const Q& x) {
    Z r;
    mpz_cdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return r;
}

Q pow_q(const Q& x, long e) {
    if (e < 0) {
        if (x == 0) throw std::domain_error("zero to negative power");
        return pow_q(Q(1) / x, -e);
    }
    Q r = 1, b = x;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

Z binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    Z r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

std::vector<Z> primitive(const std::vector<Q>& v) {
    Z l = 1;
    for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    std::vector<Z> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(Z(x.get_num() * (l / x.get_den())));
    return primitive(out);
}

std::vector<Z> primitive(const std::vector<Z>& v) {
    Z g = 0;
    for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    std::vector<Z> out = v;
    if (g > 1)
        for (auto& x : out) x /= g;
    return out;
}

std::vector<Q> to_q(const std::vector<Z>& v) {
    return std::vector<Q>(v.begin(), v.end());
}

}  // namespace chtouca

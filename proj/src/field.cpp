#include "chtouca/field.hpp"

#include "chtouca/error.hpp"

#include <stdexcept>

namespace chtouca {

namespace {

using Poly = std::vector<int>;  // ascending coefficients over F_p

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

int inv_mod(int a, int p) {
    for (int x = 1; x < p; ++x)
        if (a * x % p == 1) return x;
    throw std::domain_error("no inverse mod p");
}

Poly poly_mod(Poly f, const Poly& g, int p) {
    trim(f);
    Poly h = g;
    trim(h);
    int lead_inv = inv_mod(h.back(), p);
    while (f.size() >= h.size()) {
        int c = f.back() * lead_inv % p;
        std::size_t shift = f.size() - h.size();
        for (std::size_t i = 0; i < h.size(); ++i) f[shift + i] = ((f[shift + i] - c * h[i]) % p + p) % p;
        trim(f);
    }
    return f;
}

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

bool irreducible(const Poly& f, int p) {
    int k = static_cast<int>(f.size()) - 1;
    for (int d = 1; 2 * d <= k; ++d) {
        long count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (long t = 0; t < count; ++t) {
            Poly g(d + 1);
            long u = t;
            for (int i = 0; i < d; ++i) {
                g[i] = static_cast<int>(u % p);
                u /= p;
            }
            g[d] = 1;
            if (poly_mod(f, g, p).empty()) return false;
        }
    }
    return true;
}

}  // namespace

std::vector<int> Field::first_irreducible(int p, int k) {
    long count = 1;
    for (int i = 0; i < k; ++i) count *= p;
    for (long t = 0; t < count; ++t) {
        Poly f(k + 1);
        long u = t;
        for (int i = 0; i < k; ++i) {
            f[i] = static_cast<int>(u % p);
            u /= p;
        }
        f[k] = 1;
        if (irreducible(f, p)) return f;
    }
    throw std::logic_error("no irreducible polynomial found");
}

Field Field::rational() { return Field(); }

Field Field::finite(int p, int k, std::vector<int> modulus) {
    long size = 1;
    for (int i = 0; i < k && size <= 4096; ++i) size *= p;
    if (!is_prime(p) || p > 7 || k < 1 || size > 4096) throw InvalidData("unsupported finite field GF(" + std::to_string(p) + "^" + std::to_string(k) + ")");
    if (modulus.empty()) modulus = first_irreducible(p, k);
    if (static_cast<int>(modulus.size()) != k + 1 || modulus[k] != 1) throw InvalidData("modulus must be monic of degree k");
    for (int c : modulus)
        if (c < 0 || c >= p) throw InvalidData("modulus coefficient out of range");
    if (!irreducible(modulus, p)) throw InvalidData("modulus is not irreducible");

    Field f;
    f.p_ = p;
    f.k_ = k;
    f.q_ = 1;
    for (int i = 0; i < k; ++i) f.q_ *= p;
    auto t = std::make_shared<Tables>();
    t->modulus = modulus;
    t->digits.resize(f.q_);
    for (long i = 0; i < f.q_; ++i) {
        Poly d(k);
        long u = i;
        for (int j = 0; j < k; ++j) {
            d[j] = static_cast<int>(u % p);
            u /= p;
        }
        t->digits[i] = d;
    }
    auto index_of = [&](const Poly& d) {
        long v = 0;
        for (int j = k - 1; j >= 0; --j) v = v * p + (j < static_cast<int>(d.size()) ? d[j] : 0);
        return v;
    };
    auto mulpoly = [&](const Poly& a, const Poly& b) {
        Poly c(a.size() + b.size(), 0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
        return poly_mod(c, modulus, p);
    };
    long n = f.q_ - 1;
    for (long g = 1; g < f.q_; ++g) {
        std::vector<int> ex;
        Poly cur = {1};
        long cidx = 1;
        do {
            ex.push_back(static_cast<int>(cidx));
            cur = mulpoly(cur, t->digits[g]);
            cidx = index_of(cur);
        } while (cidx != 1 && static_cast<long>(ex.size()) <= n);
        if (static_cast<long>(ex.size()) == n) {
            t->exp = ex;
            t->log.assign(f.q_, 0);
            for (long e = 0; e < n; ++e) t->log[ex[e]] = static_cast<int>(e);
            break;
        }
    }
    if (t->exp.empty()) throw std::logic_error("no generator found");
    f.tab_ = t;
    return f;
}

const std::vector<int>& Field::modulus() const {
    static const std::vector<int> none;
    return tab_ ? tab_->modulus : none;
}

long Field::idx(const Q& a) const {
    if (a.get_den() != 1 || a < 0 || a >= q_) throw InvalidData("not an element of GF(" + std::to_string(q_) + "): " + a.get_str());
    return a.get_num().get_si();
}

bool Field::contains(const Q& a) const {
    if (!tab_) return true;
    return a.get_den() == 1 && a >= 0 && a < q_;
}

Q Field::from_int(long v) const {
    if (!tab_) return Q(v);
    long m = ((v % p_) + p_) % p_;
    return Q(m);
}

Q Field::add(const Q& a, const Q& b) const {
    if (!tab_) return a + b;
    const auto& x = tab_->digits[idx(a)];
    const auto& y = tab_->digits[idx(b)];
    long v = 0;
    for (int j = k_ - 1; j >= 0; --j) v = v * p_ + (x[j] + y[j]) % p_;
    return Q(v);
}

Q Field::neg(const Q& a) const {
    if (!tab_) return -a;
    const auto& x = tab_->digits[idx(a)];
    long v = 0;
    for (int j = k_ - 1; j >= 0; --j) v = v * p_ + (p_ - x[j]) % p_;
    return Q(v);
}

Q Field::sub(const Q& a, const Q& b) const {
    if (!tab_) return a - b;
    return add(a, neg(b));
}

Q Field::mul(const Q& a, const Q& b) const {
    if (!tab_) return a * b;
    long i = idx(a), j = idx(b);
    if (i == 0 || j == 0) return Q(0);
    long n = q_ - 1;
    return Q(tab_->exp[(tab_->log[i] + tab_->log[j]) % n]);
}

Q Field::inv(const Q& a) const {
    if (a == 0) throw Singular("division by zero");
    if (!tab_) return Q(1) / a;
    long n = q_ - 1;
    long i = idx(a);
    return Q(tab_->exp[(n - tab_->log[i]) % n]);
}

Q Field::pow(const Q& a, long e) const {
    if (!tab_) return pow_q(a, e);
    long i = idx(a);
    if (i == 0) {
        if (e < 0) throw Singular("zero to a negative power");
        return e == 0 ? Q(1) : Q(0);
    }
    long n = q_ - 1;
    long ex = ((tab_->log[i] * (e % n)) % n + n) % n;
    return Q(tab_->exp[ex]);
}

std::vector<Q> Field::elements() const {
    if (!tab_) throw std::logic_error("Q has no finite element list");
    std::vector<Q> v;
    for (long i = 0; i < q_; ++i) v.emplace_back(i);
    return v;
}

std::string Field::format(const Q& a) const { return a.get_str(); }

Q Field::parse(const std::string& s) const {
    Q v = parse_rational(s);
    if (!contains(v)) throw ParseError("value " + s + " is not an element index of the field");
    return v;
}

Q Field::random(std::mt19937_64& rng, int bound) const {
    if (tab_) return Q(static_cast<long>(std::uniform_int_distribution<long>(0, q_ - 1)(rng)));
    long num = std::uniform_int_distribution<long>(-bound, bound)(rng);
    long den = std::uniform_int_distribution<long>(1, bound)(rng);
    Q x(num, den);
    x.canonicalize();
    return x;
}

Q Field::random_nonzero(std::mt19937_64& rng, int bound) const {
    for (;;) {
        Q x = random(rng, bound);
        if (x != 0) return x;
    }
}

bool Field::operator==(const Field& o) const {
    if (is_rational() || o.is_rational()) return is_rational() == o.is_rational();
    return p_ == o.p_ && k_ == o.k_ && modulus() == o.modulus();
}

}  // namespace chtouca

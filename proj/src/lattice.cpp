#include "chtouca/lattice.hpp"

#include "chtouca/error.hpp"

#include <functional>
#include <stdexcept>

namespace chtouca {

std::vector<Point> enumerate_lattice_points(int r, int n) {
    if (r < 1 || n < 0) throw InvalidData("need r >= 1 and n >= 0");
    std::vector<Point> out;
    Point cur(n + 1, 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == n) {
            cur[n] = left;
            out.push_back(cur);
            return;
        }
        for (int v = left; v >= 0; --v) {
            cur[pos] = v;
            rec(pos + 1, left - v);
        }
    };
    rec(0, r);
    return out;
}

Simplex::Simplex(int r, int n) : r_(r), n_(n), points_(enumerate_lattice_points(r, n)) {
    for (std::size_t i = 0; i < points_.size(); ++i) index_[points_[i]] = i;
    Point p(n + 1, 0);
    p[0] = r;
    corner_.push_back(index(p));
    for (int j = 1; j <= n; ++j) {
        Point q(n + 1, 0);
        q[0] = r - 1;
        q[j] = 1;
        corner_.push_back(index(q));
    }
    std::vector<bool> used(points_.size(), false);
    for (auto c : corner_) used[c] = true;
    for (std::size_t i = 0; i < points_.size(); ++i)
        if (!used[i]) free_.push_back(i);
}

std::size_t Simplex::index(const Point& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) throw std::out_of_range("point not in simplex");
    return it->second;
}

std::size_t Simplex::vertex(int k) const {
    Point p(n_ + 1, 0);
    p[k] = r_;
    return index(p);
}

Q affine_eval(const std::vector<Q>& c, const Point& x) {
    Q v = 0;
    for (std::size_t k = 0; k < c.size(); ++k) v += c[k] * x[k];
    return v;
}

QuotientClass affine_normal_form(const LatticeFunction& f) {
    Simplex s(f.r, f.n);
    if (f.values.size() != s.size()) throw InvalidData("lattice function must be defined on every point");
    std::vector<Q> c(f.n + 1);
    for (int k = 0; k <= f.n; ++k) c[k] = f.values[s.vertex(k)] / f.r;
    QuotientClass out;
    out.normal_form.r = f.r;
    out.normal_form.n = f.n;
    out.normal_form.values.resize(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) out.normal_form.values[i] = f.values[i] - affine_eval(c, s.point(i));
    return out;
}

bool is_affine(const LatticeFunction& f) {
    for (const auto& v : affine_normal_form(f).normal_form.values)
        if (v != 0) return false;
    return true;
}

std::vector<Q> quotient_coordinates(const Simplex& s, const std::vector<Q>& h) {
    // affine a with a = h on the corner basis: c_0 = h(r e_0)/r, c_j = h((r-1)e_0+e_j) - (r-1) c_0
    const auto& cb = s.corner_basis();
    std::vector<Q> c(s.n() + 1);
    c[0] = h[cb[0]] / s.r();
    for (int j = 1; j <= s.n(); ++j) c[j] = h[cb[j]] - (s.r() - 1) * c[0];
    std::vector<Q> y;
    for (auto i : s.quotient_coords()) y.push_back(h[i] - affine_eval(c, s.point(i)));
    return y;
}

std::vector<Q> lift_coordinates(const Simplex& s, const std::vector<Q>& y) {
    std::vector<Q> h(s.size(), Q(0));
    const auto& fc = s.quotient_coords();
    if (y.size() != fc.size()) throw InvalidData("quotient coordinate length mismatch");
    for (std::size_t k = 0; k < fc.size(); ++k) h[fc[k]] = y[k];
    return h;
}

}  // namespace chtouca

#pragma once

#include "chtouca/matrix.hpp"

#include <vector>

namespace chtouca {

using IVec = std::vector<Z>;

// Closed rational polyhedral cone in Q^dim, kept in a canonical double description:
// equations span the orthogonal complement of the cone's span, facets are the
// irredundant inequalities (reduced modulo the equations), lineality is a basis of
// the lineality space and rays are the extreme rays modulo lineality. Every vector
// is primitive; lists are sorted.
struct Cone {
    std::size_t dim = 0;
    std::vector<IVec> equations;
    std::vector<IVec> facets;
    std::vector<IVec> lineality;
    std::vector<IVec> rays;

    static Cone from_constraints(std::size_t dim, const std::vector<IVec>& equations,
                                 const std::vector<IVec>& inequalities);
    static Cone from_generators(std::size_t dim, const std::vector<IVec>& rays,
                                const std::vector<IVec>& lineality = {});
    static Cone zero(std::size_t dim) { return from_generators(dim, {}); }

    std::size_t dimension() const { return dim - equations.size(); }
    bool is_pointed() const { return lineality.empty(); }
    bool contains(const std::vector<Q>& x) const;
    bool contains(const IVec& x) const;
    // generators: rays then lineality vectors and their negatives
    std::vector<IVec> generators() const;

    bool operator==(const Cone& o) const {
        return dim == o.dim && lineality == o.lineality && rays == o.rays && equations == o.equations;
    }
    bool operator!=(const Cone& o) const { return !(*this == o); }
    bool operator<(const Cone& o) const;
};

struct DDResult {
    std::vector<std::vector<Q>> lineality;
    std::vector<std::vector<Q>> rays;
};

// {x : E x = 0, A x >= 0} -> lineality basis and extreme rays (incremental double description).
DDResult double_description(std::size_t dim, const std::vector<std::vector<Q>>& equations,
                            const std::vector<std::vector<Q>>& inequalities);

Cone dual_cone(const Cone& c);
Cone intersect(const Cone& a, const Cone& b);
bool is_face(const Cone& t, const Cone& c);
bool relative_interiors_meet(const Cone& a, const Cone& b);
// Rays together with a lattice basis of the lineality space extend to a basis of Z^dim.
bool is_smooth(const Cone& c);
// All faces of c (including c and its minimal face), sorted.
std::vector<Cone> faces(const Cone& c);

Q dot(const IVec& a, const std::vector<Q>& x);
Z dot(const IVec& a, const IVec& x);

}  // namespace chtouca

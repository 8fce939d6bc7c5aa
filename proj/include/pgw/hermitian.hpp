#pragma once

#include <cstdint>
#include <span>

#include "pgw/projgeom.hpp"

namespace pgw {

/// A Hermitian form on PG(n, q^2): conjugate-symmetric Gram matrix H,
/// eta(v, w) = v^T H conj(w). The variety is {P : eta(P, P) = 0}.
struct HermitianForm {
    ProjSpace space;
    Matrix gram;
};

/// The ambient field GF(q^2) for a prime-power q.
const Gf& hermitian_layer_field(std::uint32_t q);

/// Validates conjugate symmetry (which forces the diagonal into GF(q)).
HermitianForm make_form(const ProjSpace& space, Matrix gram);

/// Identity Gram matrix; the variety is the Fermat-type locus
/// sum x_i^{q+1} = 0, nondegenerate.
HermitianForm standard_form(const ProjSpace& space);

Felt form_eval(const HermitianForm& form, std::span<const Felt> v, std::span<const Felt> w);

struct DegeneracyClass {
    std::uint32_t t = 0;  // vector dimension of the radical
    Subspace radical;     // empty flat when t = 0
};

DegeneracyClass radical_classify(const HermitianForm& form);

/// Exact zero locus of eta(P, P) over the rational points.
PointSet variety_points(const HermitianForm& form, int workers = 0);

/// |H(r, q^2)| for a nondegenerate form; 0 for r <= 0.
BigInt hermitian_count(int r, std::uint32_t q);

/// Point count of the cone R_t H(r-t, q^2): theta(t-1) + |H(r-t)| q^{2t}.
/// t = 0 is the nondegenerate case; t = r+1 (the zero form) is rejected.
BigInt expected_count(std::uint32_t r, std::uint32_t q, std::uint32_t t);

/// Tangent/secant hyperplane section sizes of H(r, q^2).
BigInt tangent_section_count(std::uint32_t r, std::uint32_t q);
BigInt secant_section_count(std::uint32_t r, std::uint32_t q);

/// The polar hyperplane {X : eta(X, P) = 0}. Form must be nondegenerate.
Subspace perp_point(const HermitianForm& form, std::span<const Felt> point);
/// Intersection of the polar hyperplanes of a flat's basis points.
Subspace perp_flat(const HermitianForm& form, const Subspace& flat);

struct HyperplaneClass {
    bool tangent = false;
    ProjPoint pole;  // always defined for a nondegenerate form
};

/// A hyperplane is tangent iff its pole lies on the variety.
HyperplaneClass classify_hyperplane(const HermitianForm& form, const Subspace& hyperplane);

/// Union of the lines joining every vertex point to every base point,
/// plus the vertex itself. Vertex and base_flat must be complementary;
/// the base set must lie inside base_flat. An empty vertex yields the base.
PointSet cone_points(const ProjSpace& space, const Subspace& vertex, const PointSet& base,
                     const Subspace& base_flat);

/// Gram matrix of the form restricted to a flat: B H conj(B)^T on the
/// flat's basis rows, as a form on PG(dim(flat), q^2).
HermitianForm induced_form(const HermitianForm& form, const Subspace& flat);

/// A generator (maximal totally isotropic flat) of the standard form:
/// rows (.., 1, e, ..) on coordinate pairs with norm(e) = -1.
Subspace standard_generator_flat(const ProjSpace& space);

}  // namespace pgw

#include "pgw/hermitian.hpp"

#include <algorithm>

#include "pgw/parallel.hpp"

namespace pgw {

const Gf& hermitian_layer_field(std::uint32_t q) {
    require(q >= 2, Errc::bad_parameters, "q must be >= 2");
    for (std::uint32_t p = 2; p <= q; ++p) {
        if (q % p != 0) continue;
        std::uint32_t a = 0, rest = q;
        while (rest % p == 0) { rest /= p; ++a; }
        require(rest == 1, Errc::bad_parameters, "q must be a prime power");
        return Gf::get(p, 2 * a);
    }
    fail(Errc::bad_parameters, "q must be a prime power");
}

HermitianForm make_form(const ProjSpace& space, Matrix gram) {
    const Gf& f = space.field();
    f.layer_q();
    require(gram.rows() == space.ncoords() && gram.cols() == space.ncoords(),
            Errc::dimension_mismatch, "gram size must match the space");
    for (std::size_t i = 0; i < gram.rows(); ++i)
        for (std::size_t j = 0; j <= i; ++j)
            require(gram.at(i, j) == f.conj(gram.at(j, i)), Errc::bad_parameters,
                    "gram matrix is not conjugate-symmetric");
    return HermitianForm{space, std::move(gram)};
}

HermitianForm standard_form(const ProjSpace& space) {
    return make_form(space, Matrix::identity(space.field(), space.ncoords()));
}

Felt form_eval(const HermitianForm& form, std::span<const Felt> v, std::span<const Felt> w) {
    const Gf& f = form.space.field();
    const std::size_t n = form.gram.rows();
    require(v.size() == n && w.size() == n, Errc::dimension_mismatch, "vector length mismatch");
    Felt acc = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (w[j] == 0) continue;
        const Felt wj = f.conj(w[j]);
        Felt col = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (v[i] != 0 && form.gram.at(i, j) != 0)
                col = f.add(col, f.mul(v[i], form.gram.at(i, j)));
        acc = f.add(acc, f.mul(col, wj));
    }
    return acc;
}

DegeneracyClass radical_classify(const HermitianForm& form) {
    // Rad = conj(ker H): eta(v, w) = v^T H conj(w) vanishes for all v
    // exactly when H conj(w) = 0.
    Matrix ker = form.gram.kernel();
    DegeneracyClass out{static_cast<std::uint32_t>(ker.rows()),
                        Subspace::empty(form.space.field(), form.space.ncoords())};
    if (ker.rows() > 0) out.radical = Subspace::from_rref(ker.conjugated().echelon().rref);
    return out;
}

PointSet variety_points(const HermitianForm& form, int workers) {
    const ProjSpace& sp = form.space;
    const std::size_t nc = sp.ncoords();
    const int w = resolve_workers(workers);
    std::vector<PointSet> parts(w, PointSet(sp));
    parallel_ranges(sp.point_count(), w, [&](int wid, std::uint64_t begin, std::uint64_t end) {
        PointSet& mine = parts[wid];
        for_each_space_point(sp, begin, end, [&](const Felt* coords, std::uint64_t i) {
            if (form_eval(form, {coords, nc}, {coords, nc}) == 0) mine.set(i);
        });
    });
    PointSet out = std::move(parts[0]);
    for (int i = 1; i < w; ++i) out.or_with(parts[i]);
    out.card();
    return out;
}

BigInt hermitian_count(int r, std::uint32_t q) {
    if (r <= 0) return 0;
    const BigInt Q(q);
    const int sign = (r % 2 == 0) ? 1 : -1;
    return (boost::multiprecision::pow(Q, r + 1) + sign) * (boost::multiprecision::pow(Q, r) - sign) /
           (Q * Q - 1);
}

BigInt expected_count(std::uint32_t r, std::uint32_t q, std::uint32_t t) {
    require(t <= r, Errc::bad_parameters, "rank-zero form is not a variety (t must be <= r)");
    const BigInt m = BigInt(q) * q;
    BigInt vertex = 0;  // theta(t-1)
    if (t > 0) vertex = (boost::multiprecision::pow(m, t) - 1) / (m - 1);
    return vertex + hermitian_count(static_cast<int>(r - t), q) * boost::multiprecision::pow(m, t);
}

BigInt tangent_section_count(std::uint32_t r, std::uint32_t q) {
    require(r >= 2, Errc::bad_parameters, "tangent sections need r >= 2");
    return 1 + BigInt(q) * q * hermitian_count(static_cast<int>(r) - 2, q);
}

BigInt secant_section_count(std::uint32_t r, std::uint32_t q) {
    require(r >= 1, Errc::bad_parameters, "secant sections need r >= 1");
    return hermitian_count(static_cast<int>(r) - 1, q);
}

namespace {

void require_nondegenerate(const HermitianForm& form) {
    require(form.gram.echelon().rank == form.gram.rows(), Errc::degenerate_form,
            "operation requires a nondegenerate form");
}

// Row vector of the polar functional H conj(P).
std::vector<Felt> polar_functional(const HermitianForm& form, std::span<const Felt> point) {
    const Gf& f = form.space.field();
    std::vector<Felt> pc(point.begin(), point.end());
    for (Felt& x : pc) x = f.conj(x);
    return form.gram.apply(pc);
}

}  // namespace

Subspace perp_point(const HermitianForm& form, std::span<const Felt> point) {
    require_nondegenerate(form);
    std::vector<Felt> a = polar_functional(form, form.space.normalize(point));
    Matrix constraint = Matrix::from_rows(form.space.field(), {a});
    return Subspace::from_rref(constraint.kernel());
}

Subspace perp_flat(const HermitianForm& form, const Subspace& flat) {
    require_nondegenerate(form);
    require(flat.dim() >= 0, Errc::bad_parameters, "perp of the empty flat");
    std::vector<std::vector<Felt>> rows;
    for (std::size_t r = 0; r < flat.basis().rows(); ++r) {
        auto row = flat.basis().row(r);
        rows.push_back(polar_functional(form, row));
    }
    Matrix constraints = Matrix::from_rows(form.space.field(), rows);
    return Subspace::from_rref(constraints.kernel());
}

HyperplaneClass classify_hyperplane(const HermitianForm& form, const Subspace& hyperplane) {
    require(hyperplane.dim() == static_cast<int>(form.space.dim()) - 1, Errc::not_hyperplane,
            "flat is not a hyperplane");
    require_nondegenerate(form);
    const Gf& f = form.space.field();
    // dual functional a of the hyperplane, then pole P = conj(H^{-1} a)
    Matrix a = hyperplane.basis().kernel();
    require(a.rows() == 1, Errc::not_hyperplane, "hyperplane basis is degenerate");
    const std::size_t nc = form.space.ncoords();
    Matrix aug(f, nc, nc + 1);
    for (std::size_t i = 0; i < nc; ++i) {
        for (std::size_t j = 0; j < nc; ++j) aug.at(i, j) = form.gram.at(i, j);
        aug.at(i, nc) = a.at(0, i);
    }
    Matrix::Echelon e = aug.echelon();
    std::vector<Felt> x(nc, 0);
    for (std::size_t r = 0; r < e.rank; ++r) x[e.pivots[r]] = e.rref.at(r, nc);
    for (Felt& v : x) v = f.conj(v);
    HyperplaneClass out;
    out.pole = make_point(form.space, x);
    out.tangent = form_eval(form, out.pole.coords, out.pole.coords) == 0;
    return out;
}

PointSet cone_points(const ProjSpace& space, const Subspace& vertex, const PointSet& base,
                     const Subspace& base_flat) {
    const Gf& f = space.field();
    require(base.space() == space, Errc::dimension_mismatch, "base set over a different space");
    require(vertex.dim() + base_flat.dim() == static_cast<int>(space.dim()) - 1,
            Errc::not_complementary, "vertex and base flat dimensions do not sum to n-1");
    {
        std::vector<std::vector<Felt>> stacked;
        for (std::size_t r = 0; r < vertex.basis().rows(); ++r) {
            auto row = vertex.basis().row(r);
            stacked.emplace_back(row.begin(), row.end());
        }
        for (std::size_t r = 0; r < base_flat.basis().rows(); ++r) {
            auto row = base_flat.basis().row(r);
            stacked.emplace_back(row.begin(), row.end());
        }
        require(!stacked.empty(), Errc::not_complementary, "both flats are empty");
        Matrix joined = Matrix::from_rows(f, stacked);
        require(joined.echelon().rank == space.ncoords(), Errc::not_complementary,
                "vertex and base flat do not span the space");
    }

    // base must live inside base_flat
    std::vector<std::uint64_t> base_members;
    for (std::uint64_t i = 0; i < base.universe(); ++i)
        if (base.test(i)) base_members.push_back(i);
    for (std::uint64_t i : base_members) {
        std::vector<Felt> c = space.point_coords(i);
        require(base_flat.contains_point(c), Errc::bad_parameters,
                "base point outside the base flat");
    }

    PointSet out(space);
    out.or_with(base);
    if (vertex.dim() >= 0) {
        std::vector<std::uint64_t> vertex_members;
        for_each_point_index(space, vertex.basis(),
                             [&](std::uint64_t i) { vertex_members.push_back(i); });
        for (std::uint64_t i : vertex_members) out.set(i);
        std::vector<Felt> mixed(space.ncoords());
        for (std::uint64_t qi : base_members) {
            const std::vector<Felt> qc = space.point_coords(qi);
            for (std::uint64_t pi : vertex_members) {
                const std::vector<Felt> pc = space.point_coords(pi);
                for (std::uint32_t mu = 1; mu < f.order(); ++mu) {
                    for (std::size_t c = 0; c < mixed.size(); ++c)
                        mixed[c] = f.add(qc[c], f.mul(mu, pc[c]));
                    out.set(space.point_index(mixed));
                }
            }
        }
    }
    out.card();
    return out;
}

HermitianForm induced_form(const HermitianForm& form, const Subspace& flat) {
    require(flat.dim() >= 0, Errc::bad_parameters, "induced form on the empty flat");
    const Matrix& b = flat.basis();
    Matrix restricted = b.multiplied(form.gram).multiplied(b.conjugated().transposed());
    ProjSpace sub(form.space.field(), static_cast<std::uint32_t>(flat.dim()));
    return make_form(sub, std::move(restricted));
}

Subspace standard_generator_flat(const ProjSpace& space) {
    const Gf& f = space.field();
    const std::uint32_t r = space.dim();
    require(r >= 2, Errc::bad_parameters, "generators need r >= 2");
    Felt e = 0;
    const Felt minus_one = f.neg(f.one());
    for (std::uint32_t x = 1; x < f.order(); ++x)
        if (f.norm(x) == minus_one) { e = x; break; }
    require(e != 0, Errc::bad_parameters, "no norm -1 element found");
    const std::uint32_t rows = (r + 1) / 2;
    Matrix basis(f, rows, space.ncoords());
    for (std::uint32_t i = 0; i < rows; ++i) {
        basis.at(i, 2 * i) = f.one();
        basis.at(i, 2 * i + 1) = e;
    }
    return Subspace::from_rref(std::move(basis));
}

}  // namespace pgw

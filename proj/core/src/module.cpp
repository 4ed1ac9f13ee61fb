#include "cohomoforge/module.hpp"

namespace cohomoforge {

namespace {

FpMatrix coords_in(const std::vector<FpVector>& basis, const std::vector<FpVector>& vecs, std::size_t dim, residue_t p,
    const char* what) {
    FpMatrix b = FpMatrix::from_rows(basis, dim, p);
    FpMatrix out(vecs.size(), basis.size(), p);
    for (std::size_t i = 0; i < vecs.size(); ++i) {
        auto x = preimage(b, vecs[i]);
        if (!x)
            throw module_error(what);
        for (std::size_t j = 0; j < basis.size(); ++j)
            out.set(i, j, (*x)[j]);
    }
    return out;
}

std::size_t last_nonzero(const FiniteGroup& g, Elem y) {
    std::size_t k = g.n_gens() - 1;
    while (g.exponent_at(y, k) == 0)
        --k;
    return k;
}

} // namespace

FpMatrix GModule::element_action(Elem x) const {
    const auto& G = *group;
    FpMatrix m = FpMatrix::identity(dim, prime());
    for (std::size_t k = 0; k < G.n_gens(); ++k) {
        residue_t e = G.exponent_at(x, k);
        if (e)
            m = m * action[k].power(e);
    }
    return m;
}

FpVector GModule::act(const FpVector& v, Elem x) const {
    const auto& G = *group;
    FpVector out = v;
    for (std::size_t k = 0; k < G.n_gens(); ++k)
        for (residue_t e = G.exponent_at(x, k); e > 0; --e)
            out = action[k].left_apply(out);
    return out;
}

std::uint64_t GModule::size() const {
    std::uint64_t s = 1;
    for (std::size_t i = 0; i < dim; ++i)
        s *= prime();
    return s;
}

bool GModule::is_trivial() const {
    for (const auto& a : action)
        if (!(a == FpMatrix::identity(dim, prime())))
            return false;
    return true;
}

GModule make_module(GroupPtr g, std::vector<FpMatrix> action) {
    const auto& G = *g;
    const residue_t p = G.prime();
    if (action.size() != G.n_gens())
        throw module_error("one action matrix per pc generator is required");
    const std::size_t dim = action.empty() ? 0 : action[0].rows();
    for (const auto& a : action) {
        if (a.rows() != dim || a.cols() != dim)
            throw module_error("action matrices must be square of a common size");
        if (a.modulus() != p)
            throw modulus_mismatch("action matrix over the wrong field");
        if (rref_rank(a).rank != dim)
            throw module_error("action matrix is not invertible");
    }
    GModule m{g, dim, std::move(action)};
    if (dim == 0 || G.n_gens() == 0)
        return m;

    // element images along normal words, then the homomorphism check on every
    // right multiplication by a generator
    std::vector<FpMatrix> img(static_cast<std::size_t>(G.order()));
    img[0] = FpMatrix::identity(dim, p);
    for (Elem y = 1; y < G.order(); ++y) {
        std::size_t k = last_nonzero(G, y);
        img[y] = img[y - G.generator(k)] * m.action[k];
    }
    for (Elem x = 0; x < G.order(); ++x)
        for (std::size_t k = 0; k < G.n_gens(); ++k)
            if (!(img[G.right_gen(x, k)] == img[x] * m.action[k]))
                throw module_error("action does not respect the relations: " + G.format(x) + "*"
                    + G.presentation().name(k));
    return m;
}

GModule trivial_module(GroupPtr g, std::size_t dim) {
    std::vector<FpMatrix> act(g->n_gens(), FpMatrix::identity(dim, g->prime()));
    return GModule{std::move(g), dim, std::move(act)};
}

GModule zero_module(GroupPtr g) {
    return trivial_module(std::move(g), 0);
}

GModule direct_sum(const GModule& a, const GModule& b) {
    if (a.group != b.group)
        throw parent_mismatch("direct sum of modules over different groups");
    std::vector<FpMatrix> act;
    for (std::size_t k = 0; k < a.action.size(); ++k)
        act.push_back(block_diagonal(a.action[k], b.action[k]));
    return GModule{a.group, a.dim + b.dim, std::move(act)};
}

GModule restrict_module(const GModule& a, GroupPtr source, const std::vector<Elem>& hom) {
    if (hom.size() != source->order())
        throw module_error("homomorphism table has the wrong length");
    std::vector<FpMatrix> act;
    for (std::size_t k = 0; k < source->n_gens(); ++k)
        act.push_back(a.element_action(hom[source->generator(k)]));
    return make_module(std::move(source), std::move(act));
}

bool same_module(const GModule& a, const GModule& b) {
    if (a.group != b.group || a.dim != b.dim)
        return false;
    for (std::size_t k = 0; k < a.action.size(); ++k)
        if (!(a.action[k] == b.action[k]))
            return false;
    return true;
}

ModuleMap make_map(const GModule& source, const GModule& target, FpMatrix matrix) {
    if (source.group != target.group)
        throw parent_mismatch("module map between modules over different groups");
    if (matrix.rows() != source.dim || matrix.cols() != target.dim)
        throw module_error("map matrix is " + std::to_string(matrix.rows()) + "x" + std::to_string(matrix.cols())
            + ", expected " + std::to_string(source.dim) + "x" + std::to_string(target.dim));
    ModuleMap f{source, target, std::move(matrix)};
    if (!is_equivariant(f))
        throw module_error("map is not equivariant");
    return f;
}

bool is_equivariant(const ModuleMap& f) {
    for (std::size_t k = 0; k < f.source.action.size(); ++k)
        if (!(f.source.action[k] * f.matrix == f.matrix * f.target.action[k]))
            return false;
    return true;
}

ModuleMap identity_map(const GModule& m) {
    return ModuleMap{m, m, FpMatrix::identity(m.dim, m.prime())};
}

ModuleMap zero_map(const GModule& source, const GModule& target) {
    return make_map(source, target, FpMatrix(source.dim, target.dim, source.prime()));
}

ModuleMap scalar_map(const GModule& m, residue_t c) {
    FpMatrix s(m.dim, m.dim, m.prime());
    for (std::size_t i = 0; i < m.dim; ++i)
        s.set(i, i, c);
    return ModuleMap{m, m, std::move(s)};
}

ModuleMap compose(const ModuleMap& first, const ModuleMap& second) {
    if (!same_module(first.target, second.source))
        throw module_error("composition of maps with mismatched modules");
    return ModuleMap{first.source, second.target, first.matrix * second.matrix};
}

ModuleMap diagonal_map(const GModule& b) {
    const residue_t p = b.prime();
    FpMatrix m(b.dim, 2 * b.dim, p);
    for (std::size_t i = 0; i < b.dim; ++i) {
        m.set(i, i, 1);
        m.set(i, b.dim + i, 1);
    }
    return ModuleMap{b, direct_sum(b, b), std::move(m)};
}

ModuleMap codiagonal_map(const GModule& a) {
    const residue_t p = a.prime();
    FpMatrix m(2 * a.dim, a.dim, p);
    for (std::size_t i = 0; i < a.dim; ++i) {
        m.set(i, i, 1);
        m.set(a.dim + i, i, 1);
    }
    return ModuleMap{direct_sum(a, a), a, std::move(m)};
}

ModuleMap direct_sum(const ModuleMap& f, const ModuleMap& g) {
    return ModuleMap{direct_sum(f.source, g.source), direct_sum(f.target, g.target), block_diagonal(f.matrix, g.matrix)};
}

std::size_t rank(const ModuleMap& f) {
    return rref_rank(f.matrix).rank;
}

Submodule submodule(const GModule& m, const std::vector<FpVector>& rows) {
    const residue_t p = m.prime();
    std::vector<FpVector> basis = row_space_basis(rows, m.dim, p);
    std::vector<FpMatrix> act;
    for (const auto& a : m.action) {
        std::vector<FpVector> imgs;
        for (const auto& b : basis)
            imgs.push_back(a.left_apply(b));
        act.push_back(coords_in(basis, imgs, m.dim, p, "subspace is not invariant"));
    }
    Submodule out;
    out.module = GModule{m.group, basis.size(), std::move(act)};
    out.inclusion = FpMatrix::from_rows(basis, m.dim, p);
    return out;
}

QuotientModule quotient_module(const GModule& m, const std::vector<FpVector>& rows) {
    const residue_t p = m.prime();
    std::vector<FpVector> w = row_space_basis(rows, m.dim, p);
    std::vector<long> pivot_of(m.dim, -1);
    for (std::size_t i = 0; i < w.size(); ++i) {
        std::size_t c = 0;
        while (w[i][c] == 0)
            ++c;
        pivot_of[c] = static_cast<long>(i);
    }
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < m.dim; ++c)
        if (pivot_of[c] < 0)
            free_cols.push_back(c);
    const std::size_t q = free_cols.size();

    FpMatrix proj(m.dim, q, p);
    FpMatrix lift(q, m.dim, p);
    for (std::size_t k = 0; k < q; ++k) {
        proj.set(free_cols[k], k, 1);
        lift.set(k, free_cols[k], 1);
    }
    for (std::size_t c = 0; c < m.dim; ++c) {
        if (pivot_of[c] < 0)
            continue;
        const FpVector& row = w[static_cast<std::size_t>(pivot_of[c])];
        for (std::size_t k = 0; k < q; ++k)
            proj.set(c, k, fp_neg(row[free_cols[k]], p));
    }
    for (const auto& a : m.action)
        for (const auto& v : w)
            if (!(FpMatrix::from_rows({a.left_apply(v)}, m.dim, p) * proj).is_zero())
                throw module_error("quotient by a subspace that is not invariant");

    std::vector<FpMatrix> act;
    for (const auto& a : m.action)
        act.push_back(lift * a * proj);
    QuotientModule out;
    out.module = GModule{m.group, q, std::move(act)};
    out.projection = std::move(proj);
    out.lift = std::move(lift);
    return out;
}

std::uint64_t vector_index(const FpVector& v, residue_t p) {
    std::uint64_t idx = 0;
    for (residue_t x : v)
        idx = idx * p + x;
    return idx;
}

FpVector index_vector(std::uint64_t idx, std::size_t dim, residue_t p) {
    FpVector v(dim, 0);
    for (std::size_t i = dim; i-- > 0;) {
        v[i] = static_cast<residue_t>(idx % p);
        idx /= p;
    }
    return v;
}

std::vector<FpVector> stable_flag_basis(const GModule& m) {
    const residue_t p = m.prime();
    const std::size_t d = m.dim;
    std::vector<FpVector> chosen; // b_d first
    while (chosen.size() < d) {
        std::vector<FpVector> ann;
        if (chosen.empty()) {
            for (std::size_t j = 0; j < d; ++j) {
                FpVector e(d, 0);
                e[j] = 1;
                ann.push_back(e);
            }
        } else {
            ann = kernel_basis(FpMatrix::from_rows(chosen, d, p));
        }
        std::vector<FpVector> cond;
        for (const auto& a : m.action) {
            FpMatrix shifted = a - FpMatrix::identity(d, p);
            for (const auto& c : ann)
                cond.push_back(shifted.apply(c));
        }
        std::vector<FpVector> cands = cond.empty() ? ann : kernel_basis(FpMatrix::from_rows(cond, d, p));
        const std::size_t before = rref_rank(FpMatrix::from_rows(chosen, d, p)).rank;
        bool grown = false;
        for (const auto& v : cands) {
            auto trial = chosen;
            trial.push_back(v);
            if (rref_rank(FpMatrix::from_rows(trial, d, p)).rank > before) {
                chosen = std::move(trial);
                grown = true;
                break;
            }
        }
        if (!grown)
            throw module_error("module has no invariant flag (the group is not a p-group acting unipotently)");
    }
    return {chosen.rbegin(), chosen.rend()};
}

GroupPtr underlying_group(const GModule& m) {
    PcPresentation pcp(m.prime(), m.dim);
    for (std::size_t i = 0; i < m.dim; ++i)
        pcp.names.push_back("e" + std::to_string(i + 1));
    return make_group(std::move(pcp), {}, "F_" + std::to_string(m.prime()) + "^" + std::to_string(m.dim));
}

std::optional<FpVector> preimage(const FpMatrix& m, const FpVector& target) {
    if (m.rows() == 0) {
        for (residue_t t : target)
            if (t)
                return std::nullopt;
        return FpVector{};
    }
    return solve_linear(m.transpose(), target);
}

} // namespace cohomoforge

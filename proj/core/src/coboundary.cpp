#include "cohomoforge/cochain.hpp"
#include "cohomoforge/row_space.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

namespace cohomoforge {

namespace {

using Clock = std::chrono::steady_clock;

struct Affine {
    SparseRow terms;
    residue_t c = 0;
};

void normalize(SparseRow& r, residue_t p) {
    std::sort(r.begin(), r.end());
    std::size_t w = 0;
    for (std::size_t i = 0; i < r.size();) {
        std::size_t col = r[i].first;
        std::uint64_t v = 0;
        for (; i < r.size() && r[i].first == col; ++i)
            v += r[i].second;
        if (v % p)
            r[w++] = {col, static_cast<residue_t>(v % p)};
    }
    r.resize(w);
}

// Reduced system for d(phi) = z with phi of degree m-1. Since z is closed it
// suffices to impose the equations whose first argument lies in a generating
// set S; phi(x, t) is then forced along a spanning tree of left
// multiplication by S, leaving the unknowns phi(s, t).
class ReducedSystem {
public:
    ReducedSystem(GroupPtr g, std::size_t m, const CochainView* z)
        : g_(std::move(g)), m_(m), z_(z), p_(g_->prime()), n_(static_cast<Elem>(g_->order())) {
        gens_ = small_generating_set(whole_group(g_));
        tails_ = 1;
        for (std::size_t i = 2; i < m_; ++i)
            tails_ *= (n_ - 1);
        parent_s_.assign(n_, -1);
        parent_x_.assign(n_, 0);
        std::vector<char> seen(n_, 0);
        seen[0] = 1;
        bfs_.push_back(0);
        for (std::size_t head = 0; head < bfs_.size(); ++head) {
            Elem x = bfs_[head];
            for (std::size_t si = 0; si < gens_.size(); ++si) {
                Elem y = g_->multiply(gens_[si], x);
                if (!seen[y]) {
                    seen[y] = 1;
                    parent_s_[y] = static_cast<int>(si);
                    parent_x_[y] = x;
                    bfs_.push_back(y);
                }
            }
        }
    }

    [[nodiscard]] std::size_t unknowns() const { return gens_.size() * tails_; }
    [[nodiscard]] const std::vector<Elem>& gens() const { return gens_; }

    // unknown phi(s, u) with u of length m-2
    [[nodiscard]] std::size_t unknown(std::size_t si, const Elem* u) const {
        std::size_t idx = 0;
        for (std::size_t i = 0; i + 2 < m_; ++i)
            idx = idx * (n_ - 1) + (u[i] - 1);
        return si * tails_ + idx;
    }

    void tail_of(std::size_t idx, std::vector<Elem>& t) const {
        t.assign(m_ - 2, 0);
        for (std::size_t i = m_ - 2; i-- > 0;) {
            t[i] = static_cast<Elem>(idx % (n_ - 1) + 1);
            idx /= (n_ - 1);
        }
    }

    // terms of phi with first argument s in the equation at (s, x, t),
    // other than phi(s*x, t) and phi(x, t)
    void r_terms(std::size_t si, Elem x, const std::vector<Elem>& t, SparseRow& out) const {
        Elem y[16], merged[16];
        const std::size_t k = m_ - 1;
        y[0] = x;
        for (std::size_t i = 0; i + 1 < k; ++i)
            y[i + 1] = t[i];
        for (std::size_t i = 2; i <= m_ - 1; ++i) {
            std::size_t w = 0;
            bool ident = false;
            for (std::size_t j = 0; j < k; ++j) {
                if (j == i - 2) {
                    merged[w] = g_->multiply(y[j], y[j + 1]);
                    ++j;
                } else {
                    merged[w] = y[j];
                }
                ident = ident || merged[w] == 0;
                ++w;
            }
            if (ident)
                continue;
            residue_t sign = (i % 2) ? p_ - 1 : 1;
            out.emplace_back(unknown(si, merged), sign);
        }
        bool ident = false;
        for (std::size_t j = 0; j + 1 < k; ++j)
            ident = ident || y[j] == 0;
        if (!ident)
            out.emplace_back(unknown(si, y), (m_ % 2) ? p_ - 1 : 1);
    }

    [[nodiscard]] residue_t z_at(std::size_t si, Elem x, const std::vector<Elem>& t) const {
        if (!z_)
            return 0;
        Elem a[16];
        a[0] = gens_[si];
        a[1] = x;
        for (std::size_t i = 0; i < t.size(); ++i)
            a[i + 2] = t[i];
        return z_->at(a);
    }

    // E[x] = phi(x, t) as an affine function of the unknowns
    void expand(const std::vector<Elem>& t, std::size_t t_idx, std::vector<Affine>& e) const {
        e.assign(n_, Affine{});
        for (std::size_t h = 1; h < bfs_.size(); ++h) {
            Elem y = bfs_[h];
            std::size_t si = static_cast<std::size_t>(parent_s_[y]);
            Elem x = parent_x_[y];
            Affine& a = e[y];
            if (x == 0) {
                a.terms.emplace_back(si * tails_ + t_idx, 1);
                continue;
            }
            a = e[x];
            r_terms(si, x, t, a.terms);
            normalize(a.terms, p_);
            a.c = fp_sub(a.c, z_at(si, x, t), p_);
        }
    }

    template <class RowSink>
    void rows_for_tail(const std::vector<Elem>& t, const std::vector<Affine>& e, RowSink&& sink) const {
        const std::size_t rhs = unknowns();
        for (std::size_t si = 0; si < gens_.size(); ++si) {
            for (Elem x = 1; x < n_; ++x) {
                Elem sx = g_->multiply(gens_[si], x);
                if (parent_s_[sx] == static_cast<int>(si) && parent_x_[sx] == x)
                    continue;
                SparseRow row = e[x].terms;
                r_terms(si, x, t, row);
                for (auto [c, v] : e[sx].terms)
                    row.emplace_back(c, fp_neg(v, p_));
                residue_t c = fp_sub(fp_sub(e[x].c, z_at(si, x, t), p_), e[sx].c, p_);
                if (z_ && c)
                    row.emplace_back(rhs, c);
                sink(row, si, x);
            }
        }
    }

    [[nodiscard]] std::size_t tails() const { return tails_; }
    [[nodiscard]] Elem order() const { return n_; }
    [[nodiscard]] const std::vector<Elem>& bfs() const { return bfs_; }
    [[nodiscard]] int parent_s(Elem y) const { return parent_s_[y]; }
    [[nodiscard]] Elem parent_x(Elem y) const { return parent_x_[y]; }

private:
    GroupPtr g_;
    std::size_t m_;
    const CochainView* z_;
    residue_t p_;
    Elem n_;
    std::vector<Elem> gens_;
    std::size_t tails_ = 1;
    std::vector<int> parent_s_;
    std::vector<Elem> parent_x_;
    std::vector<Elem> bfs_;
};

std::string describe_tuple(const FiniteGroup& g, Elem s, Elem x, const std::vector<Elem>& t) {
    std::ostringstream os;
    os << '(' << g.format(s) << ", " << g.format(x);
    for (Elem e : t)
        os << ", " << g.format(e);
    os << ')';
    return os.str();
}

double since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

} // namespace

std::string to_string(CoboundaryStatus s) {
    switch (s) {
    case CoboundaryStatus::is_coboundary:
        return "IS_COBOUNDARY";
    case CoboundaryStatus::not_coboundary:
        return "NOT_COBOUNDARY";
    case CoboundaryStatus::inconclusive:
        return "INCONCLUSIVE";
    }
    return "INCONCLUSIVE";
}

namespace {

CoboundaryCertificate solve(const CochainView& z, const SolveBudget& budget, const Cochain* stored) {
    const auto t0 = Clock::now();
    CoboundaryCertificate cert;
    GroupPtr g = z.group;
    const std::size_t m = z.degree;
    const std::uint64_t order = g->order();
    const residue_t p = g->prime();

    auto inconclusive = [&](std::string why) {
        cert.status = CoboundaryStatus::inconclusive;
        cert.reason = std::move(why);
        cert.seconds = since(t0);
        return cert;
    };
    if (!budget.full) {
        if (m > 3)
            return inconclusive("degree " + std::to_string(m) + " exceeds the degree cap 3");
        if (m == 3 && order > budget.max_order_degree3)
            return inconclusive("degree-3 solve on a group of order " + std::to_string(order)
                + " exceeds the default budget (order <= " + std::to_string(budget.max_order_degree3) + ")");
        if (m == 2 && order > budget.max_order_degree2)
            return inconclusive("degree-2 solve on a group of order " + std::to_string(order)
                + " exceeds the default budget (order <= " + std::to_string(budget.max_order_degree2) + ")");
    }

    ClosureCheck cc = stored ? check_closed(*stored, budget.closure_exhaustive_limit, budget.closure_samples)
                             : check_closed(z, budget.closure_exhaustive_limit, budget.closure_samples);
    cert.closure_check = std::string(cc.exhaustive ? "exhaustive" : "sampled") + " over "
        + std::to_string(cc.tuples_checked) + " tuples";
    if (!cc.closed)
        throw precondition_error("target cochain is not closed");

    if (m == 0) {
        Elem none = 0;
        cert.status = z.at(&none) == 0 ? CoboundaryStatus::is_coboundary : CoboundaryStatus::not_coboundary;
        cert.seconds = since(t0);
        return cert;
    }
    if (m == 1) {
        Cochain zz = materialize(z);
        cert.status = zz.is_zero() ? CoboundaryStatus::is_coboundary : CoboundaryStatus::not_coboundary;
        if (zz.is_zero())
            cert.witness = Cochain(g, 0);
        else
            cert.failing_residual = "degree-1 target is a nonzero homomorphism";
        cert.seconds = since(t0);
        return cert;
    }

    ReducedSystem sys(g, m, &z);
    const std::size_t nu = sys.unknowns();
    cert.unknowns = nu;
    cert.columns = nu + 1;
    if (nu > budget.max_unknowns)
        return inconclusive(std::to_string(nu) + " reduced unknowns exceed the budget of "
            + std::to_string(budget.max_unknowns));

    StreamingRowSpace space(nu + 1, p);
    std::vector<Elem> t;
    std::vector<Affine> e;
    bool failed = false;
    for (std::size_t ti = 0; ti < sys.tails(); ++ti) {
        if (since(t0) > budget.max_seconds)
            return inconclusive("wall-time budget of " + std::to_string(budget.max_seconds) + " s exhausted after "
                + std::to_string(space.rows_seen()) + " rows");
        sys.tail_of(ti, t);
        sys.expand(t, ti, e);
        sys.rows_for_tail(t, e, [&](const SparseRow& row, std::size_t si, Elem x) {
            space.insert_sparse(row);
            if (!failed && space.is_pivot(nu)) {
                failed = true;
                cert.failing_residual = "row " + std::to_string(space.rows_seen() - 1) + " at "
                    + describe_tuple(*g, sys.gens()[si], x, t) + " reduces to 0 = nonzero";
            }
        });
    }
    cert.rows_streamed = space.rows_seen();
    cert.basis_size = space.rank();
    if (failed) {
        cert.status = CoboundaryStatus::not_coboundary;
        cert.seconds = since(t0);
        return cert;
    }

    // witness: pivot unknowns from the reduced rows, free unknowns zero
    std::vector<residue_t> u(nu, 0);
    for (std::size_t col : space.pivot_cols())
        u[col] = fp_neg(space.pivot_row(col)[nu], p);
    Cochain phi(g, m - 1);
    std::vector<Elem> args(m - 1);
    for (std::size_t ti = 0; ti < sys.tails(); ++ti) {
        sys.tail_of(ti, t);
        sys.expand(t, ti, e);
        for (Elem x = 1; x < sys.order(); ++x) {
            std::uint64_t v = e[x].c;
            for (auto [c, coef] : e[x].terms)
                v += std::uint64_t{coef} * u[c];
            args[0] = x;
            std::copy(t.begin(), t.end(), args.begin() + 1);
            phi.set(args.data(), static_cast<residue_t>(v % p));
        }
    }
    CochainView pv = view(phi);
    std::vector<Elem> tup(m, 1);
    while (true) {
        if (differential_at(pv, tup.data()) != z.at(tup.data()))
            throw std::logic_error("coboundary witness failed verification");
        std::size_t i = m;
        while (i > 0 && ++tup[i - 1] == order) {
            tup[i - 1] = 1;
            --i;
        }
        if (i == 0)
            break;
    }
    cert.status = CoboundaryStatus::is_coboundary;
    cert.witness = std::move(phi);
    cert.seconds = since(t0);
    return cert;
}

} // namespace

CoboundaryCertificate is_coboundary(const Cochain& z, const SolveBudget& budget) {
    return solve(view(z), budget, &z);
}

CoboundaryCertificate is_coboundary(const CochainView& z, const SolveBudget& budget) {
    return solve(z, budget, nullptr);
}

std::vector<Cochain> h1_basis(GroupPtr g) {
    const auto& pcp = g->presentation();
    const std::size_t n = pcp.n_gens;
    std::vector<FpVector> rows;
    for (std::size_t i = 0; i < n; ++i)
        rows.push_back(pcp.power_tails[i]);
    for (const auto& [key, w] : pcp.commutator_tails)
        rows.push_back(w);
    FpMatrix rel = FpMatrix::from_rows(rows, n, pcp.prime);
    std::vector<Cochain> out;
    for (const auto& f : kernel_basis(rel)) {
        const auto& G = *g;
        Cochain c = cochain_from(g, 1, [&](const Elem* a) {
            std::uint64_t v = 0;
            for (std::size_t k = 0; k < n; ++k)
                v += std::uint64_t{G.exponent_at(a[0], k)} * f[k];
            return static_cast<residue_t>(v % G.prime());
        });
        if (!check_closed(c).closed)
            throw std::logic_error("homomorphism candidate is not a cocycle");
        out.push_back(std::move(c));
    }
    return out;
}

std::size_t cocycle_dim(GroupPtr g, std::size_t degree, const DimBudget& budget) {
    if (degree == 0)
        return 1;
    if (g->order() == 1)
        return 0;
    ReducedSystem sys(g, degree + 1, nullptr);
    const std::size_t nu = sys.unknowns();
    if (nu > budget.max_unknowns)
        throw resource_error("cocycle space in degree " + std::to_string(degree) + " needs " + std::to_string(nu)
            + " reduced unknowns, budget is " + std::to_string(budget.max_unknowns));
    StreamingRowSpace space(nu, g->prime());
    std::vector<Elem> t;
    std::vector<Affine> e;
    for (std::size_t ti = 0; ti < sys.tails(); ++ti) {
        sys.tail_of(ti, t);
        sys.expand(t, ti, e);
        sys.rows_for_tail(t, e, [&](const SparseRow& row, std::size_t, Elem) { space.insert_sparse(row); });
    }
    return nu - space.rank();
}

std::size_t cohomology_dim(GroupPtr g, std::size_t degree, const DimBudget& budget) {
    if (degree == 0)
        return 1;
    std::uint64_t cprev = 1;
    for (std::size_t i = 1; i < degree; ++i)
        cprev *= (g->order() - 1);
    std::size_t z = cocycle_dim(g, degree, budget);
    std::size_t zprev = cocycle_dim(g, degree - 1, budget);
    return z - static_cast<std::size_t>(cprev - zprev);
}

} // namespace cohomoforge

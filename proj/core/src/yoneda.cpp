#include "cohomoforge/yoneda.hpp"

#include <unordered_map>

namespace cohomoforge {

namespace {

FpMatrix stack(const FpMatrix& top, const FpMatrix& bottom) {
    FpMatrix out(top.rows() + bottom.rows(), top.cols(), top.modulus());
    for (std::size_t i = 0; i < top.rows(); ++i)
        for (std::size_t j = 0; j < top.cols(); ++j)
            out.set(i, j, top.at(i, j));
    for (std::size_t i = 0; i < bottom.rows(); ++i)
        for (std::size_t j = 0; j < bottom.cols(); ++j)
            out.set(top.rows() + i, j, bottom.at(i, j));
    return out;
}

FpMatrix negated(const FpMatrix& m) {
    return FpMatrix(m.rows(), m.cols(), m.modulus()) - m;
}

// lifts of module values through a linear map, memoized by vector index
class Lifter {
public:
    Lifter(const ModuleMap& f) : f_(f), p_(f.source.prime()) {}

    const FpVector& lift(const residue_t* v) {
        FpVector t(v, v + f_.target.dim);
        std::uint64_t key = vector_index(t, p_);
        auto it = memo_.find(key);
        if (it != memo_.end())
            return it->second;
        auto x = preimage(f_.matrix, t);
        if (!x)
            throw extension_error("dimension shifting: value is not in the image of the next map");
        return memo_.emplace(key, std::move(*x)).first->second;
    }

private:
    const ModuleMap& f_;
    residue_t p_;
    std::unordered_map<std::uint64_t, FpVector> memo_;
};

} // namespace

ExactnessReport check_exact(const YonedaExtension& e) {
    auto fail = [](std::string why) { return ExactnessReport{false, std::move(why)}; };
    if (e.modules.size() < 3)
        return fail("an extension needs at least one middle module");
    if (e.maps.size() + 1 != e.modules.size())
        return fail("one map per consecutive pair of modules is required");
    for (std::size_t i = 0; i < e.maps.size(); ++i) {
        const auto& f = e.maps[i];
        if (!same_module(f.source, e.modules[i]) || !same_module(f.target, e.modules[i + 1]))
            return fail("map " + std::to_string(i) + " does not connect its neighbouring modules");
        if (!is_equivariant(f))
            return fail("map " + std::to_string(i) + " is not equivariant");
    }
    if (rank(e.maps.front()) != e.modules.front().dim)
        return fail("the first map is not injective");
    if (rank(e.maps.back()) != e.modules.back().dim)
        return fail("the last map is not surjective");
    for (std::size_t i = 1; i < e.maps.size(); ++i) {
        if (!(e.maps[i - 1].matrix * e.maps[i].matrix).is_zero())
            return fail("consecutive maps at module " + std::to_string(i) + " do not compose to zero");
        if (e.modules[i].dim - rank(e.maps[i]) != rank(e.maps[i - 1]))
            return fail("not exact at module " + std::to_string(i));
    }
    return {};
}

YonedaExtension make_yoneda(std::vector<GModule> modules, std::vector<ModuleMap> maps) {
    YonedaExtension e{std::move(modules), std::move(maps)};
    auto r = check_exact(e);
    if (!r.exact)
        throw extension_error(r.failure);
    return e;
}

YonedaExtension zero_extension(const GModule& a, const GModule& b, std::size_t n) {
    if (n == 0)
        throw extension_error("extensions have degree at least one");
    const residue_t p = a.prime();
    if (n == 1) {
        GModule m = direct_sum(a, b);
        FpMatrix in(a.dim, m.dim, p), out(m.dim, b.dim, p);
        for (std::size_t i = 0; i < a.dim; ++i)
            in.set(i, i, 1);
        for (std::size_t i = 0; i < b.dim; ++i)
            out.set(a.dim + i, i, 1);
        return make_yoneda({a, m, b}, {make_map(a, m, in), make_map(m, b, out)});
    }
    GModule z = zero_module(a.group);
    std::vector<GModule> mods{a, a};
    for (std::size_t i = 0; i + 2 < n; ++i)
        mods.push_back(z);
    mods.push_back(b);
    mods.push_back(b);
    std::vector<ModuleMap> maps;
    for (std::size_t i = 0; i + 1 < mods.size(); ++i) {
        bool id = (i == 0) || (i + 2 == mods.size());
        maps.push_back(id ? identity_map(mods[i]) : zero_map(mods[i], mods[i + 1]));
    }
    return make_yoneda(std::move(mods), std::move(maps));
}

YonedaExtension extension_from_h1(const Cochain& f) {
    if (f.degree() != 1)
        throw extension_error("a one-fold extension of F_p by F_p needs a 1-cocycle");
    GroupPtr g = f.group();
    const residue_t p = g->prime();
    std::vector<FpMatrix> act;
    for (std::size_t k = 0; k < g->n_gens(); ++k) {
        FpMatrix a = FpMatrix::identity(2, p);
        Elem x = g->generator(k);
        a.set(1, 0, f({x}));
        act.push_back(a);
    }
    GModule r = trivial_module(g, 1);
    GModule m = make_module(g, std::move(act));
    return make_yoneda({r, m, r}, {make_map(r, m, FpMatrix::from_rows({{1, 0}}, 2, p)),
                                      make_map(m, r, FpMatrix::from_rows({{0}, {1}}, 1, p))});
}

YonedaExtension pushout(const YonedaExtension& e, const ModuleMap& alpha) {
    if (!same_module(alpha.source, e.kernel()))
        throw extension_error("pushout map must start at the kernel module");
    if (!is_equivariant(alpha))
        throw module_error("pushout map is not equivariant");
    const GModule& a2 = alpha.target;
    const GModule& mn = e.modules[1];
    const residue_t p = a2.prime();
    GModule sum = direct_sum(a2, mn);
    // antidiagonal (alpha(a), -iota(a))
    std::vector<FpVector> rows;
    for (std::size_t i = 0; i < e.kernel().dim; ++i) {
        FpVector v(sum.dim, 0);
        for (std::size_t j = 0; j < a2.dim; ++j)
            v[j] = alpha.matrix.at(i, j);
        for (std::size_t j = 0; j < mn.dim; ++j)
            v[a2.dim + j] = fp_neg(e.maps[0].matrix.at(i, j), p);
        rows.push_back(v);
    }
    QuotientModule q = quotient_module(sum, rows);
    FpMatrix a_in(a2.dim, sum.dim, p);
    for (std::size_t i = 0; i < a2.dim; ++i)
        a_in.set(i, i, 1);
    FpMatrix next = stack(FpMatrix(a2.dim, e.modules[2].dim, p), e.maps[1].matrix);

    YonedaExtension out;
    out.modules = e.modules;
    out.modules[0] = a2;
    out.modules[1] = q.module;
    out.maps = e.maps;
    out.maps[0] = make_map(a2, q.module, a_in * q.projection);
    out.maps[1] = make_map(q.module, e.modules[2], q.lift * next);
    auto r = check_exact(out);
    if (!r.exact)
        throw extension_error("pushout is not exact: " + r.failure);
    return out;
}

YonedaExtension pullback(const YonedaExtension& e, const ModuleMap& beta) {
    if (!same_module(beta.target, e.cokernel()))
        throw extension_error("pullback map must end at the cokernel module");
    if (!is_equivariant(beta))
        throw module_error("pullback map is not equivariant");
    const std::size_t n1 = e.modules.size() - 2; // index of M_1
    const GModule& m1 = e.modules[n1];
    const GModule& b2 = beta.source;
    const residue_t p = m1.prime();
    GModule sum = direct_sum(m1, b2);
    FpMatrix diff = stack(e.maps[n1].matrix, negated(beta.matrix));
    Submodule fib = submodule(sum, kernel_basis(diff.transpose()));

    FpMatrix prev = e.maps[n1 - 1].matrix; // M_2 (or A) -> M_1
    FpMatrix into(prev.rows(), fib.module.dim, p);
    for (std::size_t i = 0; i < prev.rows(); ++i) {
        FpVector v(sum.dim, 0);
        for (std::size_t j = 0; j < m1.dim; ++j)
            v[j] = prev.at(i, j);
        auto x = preimage(fib.inclusion, v);
        if (!x)
            throw extension_error("pullback: previous map does not land in the fiber product");
        for (std::size_t j = 0; j < fib.module.dim; ++j)
            into.set(i, j, (*x)[j]);
    }
    FpMatrix proj(sum.dim, b2.dim, p);
    for (std::size_t i = 0; i < b2.dim; ++i)
        proj.set(m1.dim + i, i, 1);

    YonedaExtension out;
    out.modules = e.modules;
    out.modules[n1] = fib.module;
    out.modules[n1 + 1] = b2;
    out.maps = e.maps;
    out.maps[n1 - 1] = make_map(e.modules[n1 - 1], fib.module, into);
    out.maps[n1] = make_map(fib.module, b2, fib.inclusion * proj);
    auto r = check_exact(out);
    if (!r.exact)
        throw extension_error("pullback is not exact: " + r.failure);
    return out;
}

YonedaExtension direct_sum(const YonedaExtension& x, const YonedaExtension& y) {
    if (x.degree() != y.degree())
        throw extension_error("direct sum of extensions of different degrees");
    YonedaExtension out;
    for (std::size_t i = 0; i < x.modules.size(); ++i)
        out.modules.push_back(direct_sum(x.modules[i], y.modules[i]));
    for (std::size_t i = 0; i < x.maps.size(); ++i)
        out.maps.push_back(direct_sum(x.maps[i], y.maps[i]));
    return out;
}

YonedaExtension baer_sum(const YonedaExtension& x, const YonedaExtension& y) {
    if (x.degree() != y.degree() || !same_module(x.kernel(), y.kernel()) || !same_module(x.cokernel(), y.cokernel()))
        throw extension_error("Baer sum needs extensions with the same ends and degree");
    YonedaExtension s = direct_sum(x, y);
    s = pullback(s, diagonal_map(x.cokernel()));
    return pushout(s, codiagonal_map(x.kernel()));
}

YonedaExtension splice(const YonedaExtension& phi, const YonedaExtension& psi) {
    if (!same_module(phi.cokernel(), psi.kernel()))
        throw extension_error("splice: the right end of the first extension is not the kernel of the second");
    YonedaExtension out;
    out.modules.assign(phi.modules.begin(), phi.modules.end() - 1);
    out.modules.insert(out.modules.end(), psi.modules.begin() + 1, psi.modules.end());
    out.maps.assign(phi.maps.begin(), phi.maps.end() - 1);
    out.maps.push_back(compose(phi.maps.back(), psi.maps.front()));
    out.maps.insert(out.maps.end(), psi.maps.begin() + 1, psi.maps.end());
    auto r = check_exact(out);
    if (!r.exact)
        throw extension_error("splice is not exact: " + r.failure);
    return out;
}

Cochain shift_down(GroupPtr g, std::size_t k, std::vector<residue_t> u, const std::vector<ModuleMap>& maps_down) {
    const auto& G = *g;
    const residue_t p = G.prime();
    const std::size_t n = static_cast<std::size_t>(G.order());
    if (maps_down.empty())
        throw extension_error("dimension shifting needs at least one map");
    const GModule& last = maps_down.back().source;
    if (last.dim != 1 || !last.is_trivial())
        throw extension_error("the cocycle bridge needs the trivial module F_p at the kernel end");

    std::vector<Elem> inv(n);
    for (Elem x = 0; x < n; ++x)
        inv[x] = G.inverse(x);

    for (std::size_t step = 0; step < maps_down.size(); ++step, ++k) {
        const ModuleMap& f = maps_down[step];
        const GModule& cur = f.target;
        const std::size_t d = cur.dim;
        std::uint64_t count_in = 1;
        for (std::size_t i = 0; i < k; ++i)
            count_in *= n;
        if (u.size() != count_in * d)
            throw extension_error("dimension shifting: cochain has the wrong size");
        const std::uint64_t count_out = count_in * n;
        if (count_out * std::max<std::size_t>(d, f.source.dim) > (1ull << 27))
            throw resource_error("dimension shifting target too large to store");

        std::vector<FpMatrix> act_inv(n);
        for (Elem x = 0; x < n; ++x)
            act_inv[x] = cur.element_action(inv[x]);

        // c = delta u, then lift through f
        std::vector<residue_t> next(static_cast<std::size_t>(count_out) * f.source.dim, 0);
        Lifter lifter(f);
        std::vector<Elem> t(k + 1), sub(k);
        FpVector acc(d);
        for (std::uint64_t idx = 0; idx < count_out; ++idx) {
            std::uint64_t rem = idx;
            bool has_identity = false;
            for (std::size_t i = k + 1; i-- > 0;) {
                t[i] = static_cast<Elem>(rem % n);
                rem /= n;
                has_identity |= t[i] == 0;
            }
            if (has_identity)
                continue;
            auto flat = [&](const std::vector<Elem>& s) {
                std::uint64_t j = 0;
                for (Elem e : s)
                    j = j * n + e;
                return j;
            };
            std::fill(acc.begin(), acc.end(), 0);
            // g1 . u(g2..)
            for (std::size_t i = 0; i < k; ++i)
                sub[i] = t[i + 1];
            {
                std::uint64_t j = flat(sub);
                FpVector v(u.begin() + static_cast<long>(j * d), u.begin() + static_cast<long>((j + 1) * d));
                FpVector w = act_inv[t[0]].left_apply(v);
                for (std::size_t c = 0; c < d; ++c)
                    acc[c] = fp_add(acc[c], w[c], p);
            }
            for (std::size_t i = 0; i < k; ++i) {
                for (std::size_t a = 0, b = 0; a <= k; ++a) {
                    if (a == i) {
                        sub[b++] = G.multiply(t[a], t[a + 1]);
                        ++a;
                    } else {
                        sub[b++] = t[a];
                    }
                }
                std::uint64_t j = flat(sub);
                bool neg = (i + 1) % 2 == 1;
                for (std::size_t c = 0; c < d; ++c) {
                    residue_t val = u[j * d + c];
                    acc[c] = neg ? fp_sub(acc[c], val, p) : fp_add(acc[c], val, p);
                }
            }
            {
                for (std::size_t i = 0; i < k; ++i)
                    sub[i] = t[i];
                std::uint64_t j = flat(sub);
                bool neg = (k + 1) % 2 == 1;
                for (std::size_t c = 0; c < d; ++c) {
                    residue_t val = u[j * d + c];
                    acc[c] = neg ? fp_sub(acc[c], val, p) : fp_add(acc[c], val, p);
                }
            }
            const FpVector& l = lifter.lift(acc.data());
            for (std::size_t c = 0; c < f.source.dim; ++c)
                next[idx * f.source.dim + c] = l[c];
        }
        u = std::move(next);
    }

    return cochain_from(g, k, [&](const Elem* a) {
        std::uint64_t j = 0;
        for (std::size_t i = 0; i < k; ++i)
            j = j * n + a[i];
        return u[j];
    });
}

Cochain yoneda_cocycle(const YonedaExtension& e) {
    const GModule& b = e.cokernel();
    if (b.dim != 1 || !b.is_trivial())
        throw extension_error("the cocycle bridge needs the trivial module F_p at the cokernel end");
    const residue_t p = b.prime();
    const std::size_t n = e.degree();
    auto u0 = preimage(e.maps.back().matrix, FpVector{1 % p});
    if (!u0)
        throw extension_error("the last map is not surjective");
    std::vector<ModuleMap> down;
    for (std::size_t i = n; i-- > 0;)
        down.push_back(e.maps[i]);
    return shift_down(e.group(), 0, std::move(*u0), down);
}

bool equivalent(const YonedaExtension& x, const YonedaExtension& y) {
    Cochain d = yoneda_cocycle(x) - yoneda_cocycle(y);
    return is_coboundary(d).status == CoboundaryStatus::is_coboundary;
}

} // namespace cohomoforge

#include "cohomoforge/crossed.hpp"

#include <set>

namespace cohomoforge {

namespace {

std::vector<Elem> fiber_section(const FiniteGroup& top, const std::vector<Elem>& to_base, std::uint64_t base_order) {
    std::vector<Elem> sec(static_cast<std::size_t>(base_order), 0);
    std::vector<bool> seen(static_cast<std::size_t>(base_order), false);
    for (Elem m = 0; m < top.order(); ++m)
        if (!seen[to_base[m]]) {
            seen[to_base[m]] = true;
            sec[to_base[m]] = m;
        }
    for (bool s : seen)
        if (!s)
            throw extension_error("M_1 -> G is not surjective");
    return sec;
}

Subgroup kernel_subgroup(GroupPtr top, const std::vector<Elem>& to_base) {
    std::vector<Elem> k;
    for (Elem m = 0; m < top->order(); ++m)
        if (to_base[m] == 0)
            k.push_back(m);
    return make_subgroup(std::move(top), std::move(k));
}

bool central_in(const Subgroup& k) {
    const auto& G = *k.parent;
    for (Elem a : k.generators)
        for (std::size_t i = 0; i < G.n_gens(); ++i)
            if (G.commutator(a, G.generator(i)) != 0)
                return false;
    return true;
}

std::vector<FpMatrix> all_actions(const GModule& m) {
    std::vector<FpMatrix> out(static_cast<std::size_t>(m.group->order()));
    for (Elem g = 0; g < m.group->order(); ++g)
        out[g] = m.element_action(g);
    return out;
}

FpVector add(FpVector a, const FpVector& b, residue_t p) {
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] = fp_add(a[i], b[i], p);
    return a;
}

FpVector neg(FpVector a, residue_t p) {
    for (auto& x : a)
        x = fp_neg(x, p);
    return a;
}

// {(m, h) : to_base(m) = beta(h)} on the pcgs lifts of H followed by the
// kernel of M_1 -> G
struct Fiber {
    ModelGroup mg;
};

Fiber fiber_product(GroupPtr m1, const std::vector<Elem>& to_base, GroupPtr base, GroupPtr h,
    const std::vector<Elem>& beta) {
    Subgroup k = kernel_subgroup(m1, to_base);
    if (!central_in(k))
        throw extension_error("the kernel of M_1 -> G must be central");
    std::vector<Elem> sec = fiber_section(*m1, to_base, base->order());
    GroupModel m;
    m.prime = m1->prime();
    m.identity = {0, 0};
    for (std::size_t i = 0; i < h->n_gens(); ++i) {
        Elem g = h->generator(i);
        m.pcgs.push_back({sec[beta[g]], g});
        m.names.push_back(h->presentation().name(i));
    }
    for (std::size_t i = 0; i < k.generators.size(); ++i) {
        m.pcgs.push_back({k.generators[i], 0});
        m.names.push_back("k" + std::to_string(i + 1));
    }
    const FiniteGroup* mp = m1.get();
    const FiniteGroup* hp = h.get();
    m.mul = [mp, hp](const Exponents& a, const Exponents& b) -> Exponents {
        return {mp->multiply(a[0], b[0]), hp->multiply(a[1], b[1])};
    };
    return Fiber{group_from_model(m, {}, "fiber product")};
}

std::vector<Elem> inverse_table(const std::vector<Elem>& into_top, std::uint64_t top_order) {
    std::vector<Elem> inv(static_cast<std::size_t>(top_order), static_cast<Elem>(-1));
    for (std::size_t v = into_top.size(); v-- > 0;)
        inv[into_top[v]] = static_cast<Elem>(v);
    return inv;
}

void check_hom_table(const FiniteGroup& src, const FiniteGroup& dst, const std::vector<Elem>& hom, const char* what) {
    if (hom.size() != src.order())
        throw extension_error(std::string(what) + ": table has the wrong length");
    for (Elem x = 0; x < src.order(); ++x)
        for (std::size_t k = 0; k < src.n_gens(); ++k)
            if (hom[src.right_gen(x, k)] != dst.multiply(hom[x], hom[src.generator(k)]))
                throw extension_error(std::string(what) + ": not a homomorphism");
}

CrossedExtension checked(CrossedExtension e, const char* what) {
    auto r = check_crossed(e);
    if (!r.exact)
        throw extension_error(std::string(what) + ": " + r.failure);
    return e;
}

} // namespace

CrossedModuleReport crossed_module_check(const CrossedModule& cm) {
    const auto& M2 = *cm.m2;
    const auto& M1 = *cm.m1;
    CrossedModuleReport rep;
    auto fail = [&](const char* axiom, Elem a, Elem b) {
        rep.holds = false;
        rep.axiom = axiom;
        rep.first = a;
        rep.second = b;
        return rep;
    };
    if (cm.rho.size() != M2.order())
        return fail("rho table has the wrong length", 0, 0);
    for (Elem a = 0; a < M2.order(); ++a)
        for (std::size_t k = 0; k < M2.n_gens(); ++k)
            if (cm.rho[M2.right_gen(a, k)] != M1.multiply(cm.rho[a], cm.rho[M2.generator(k)]))
                return fail("rho is a homomorphism", a, M2.generator(k));
    for (Elem y = 0; y < M2.order(); ++y)
        for (Elem z = 0; z < M2.order(); ++z)
            if (cm.act(y, cm.rho[z]) != M2.conjugate(y, z))
                return fail("(i) y2^rho(y2') = y2^y2'", y, z);
    for (Elem y = 0; y < M2.order(); ++y)
        for (Elem x = 0; x < M1.order(); ++x)
            if (cm.rho[cm.act(y, x)] != M1.conjugate(cm.rho[y], x))
                return fail("(ii) rho(y2^y1) = rho(y2)^y1", y, x);
    return rep;
}

CrossedModule normal_inclusion(const Subgroup& n) {
    if (!is_normal(n))
        throw not_normal("crossed module from a subgroup that is not normal");
    auto sg = std::make_shared<SubgroupGroup>(as_group(n));
    GroupPtr parent = n.parent;
    CrossedModule cm;
    cm.m2 = sg->group;
    cm.m1 = parent;
    cm.rho = sg->to_parent;
    cm.act = [sg, parent](Elem y2, Elem y1) { return sg->local(parent->conjugate(sg->to_parent[y2], y1)); };
    return cm;
}

CrossedModule crossed_module_of(const CrossedExtension& e) {
    const GModule& b = e.bottom();
    auto acts = std::make_shared<std::vector<FpMatrix>>(all_actions(b));
    const residue_t p = b.prime();
    const std::size_t d = b.dim;
    CrossedModule cm;
    cm.m2 = underlying_group(b);
    cm.m1 = e.top;
    cm.rho = e.into_top;
    auto to_base = std::make_shared<std::vector<Elem>>(e.to_base);
    cm.act = [acts, to_base, p, d](Elem y2, Elem y1) {
        FpVector v = index_vector(y2, d, p);
        return static_cast<Elem>(vector_index((*acts)[(*to_base)[y1]].left_apply(v), p));
    };
    return cm;
}

ExactnessReport check_crossed(const CrossedExtension& e) {
    auto fail = [](std::string why) { return ExactnessReport{false, std::move(why)}; };
    if (e.modules.empty())
        return fail("a crossed extension needs a kernel module");
    if (e.maps.size() + 1 != e.modules.size())
        return fail("one map per consecutive pair of modules is required");
    const auto& G = *e.base;
    const auto& T = *e.top;
    const residue_t p = G.prime();
    for (const auto& m : e.modules)
        if (m.group != e.base)
            return fail("modules must be over the base group");
    for (std::size_t i = 0; i < e.maps.size(); ++i) {
        if (!same_module(e.maps[i].source, e.modules[i]) || !same_module(e.maps[i].target, e.modules[i + 1]))
            return fail("map " + std::to_string(i) + " does not connect its neighbouring modules");
        if (!is_equivariant(e.maps[i]))
            return fail("map " + std::to_string(i) + " is not equivariant");
    }
    if (e.to_base.size() != T.order())
        return fail("M_1 -> G table has the wrong length");
    for (Elem x = 0; x < T.order(); ++x)
        for (std::size_t k = 0; k < T.n_gens(); ++k)
            if (e.to_base[T.right_gen(x, k)] != G.multiply(e.to_base[x], e.to_base[T.generator(k)]))
                return fail("M_1 -> G is not a homomorphism");
    {
        std::vector<bool> hit(static_cast<std::size_t>(G.order()), false);
        for (Elem g : e.to_base)
            hit[g] = true;
        for (bool h : hit)
            if (!h)
                return fail("M_1 -> G is not surjective");
    }
    const GModule& b = e.bottom();
    const std::uint64_t bsize = b.size();
    if (e.into_top.size() != bsize)
        return fail("map into M_1 has the wrong length");
    if (e.into_top[0] != 0)
        return fail("map into M_1 does not fix the identity");
    std::vector<Elem> unit_img(b.dim);
    for (std::size_t i = 0; i < b.dim; ++i) {
        FpVector u(b.dim, 0);
        u[i] = 1;
        unit_img[i] = e.into_top[vector_index(u, p)];
    }
    for (std::uint64_t v = 0; v < bsize; ++v) {
        FpVector vv = index_vector(v, b.dim, p);
        for (std::size_t i = 0; i < b.dim; ++i) {
            FpVector w = vv;
            w[i] = fp_add(w[i], 1, p);
            if (e.into_top[vector_index(w, p)] != T.multiply(e.into_top[v], unit_img[i]))
                return fail("map into M_1 is not a homomorphism");
        }
    }
    // modules
    if (e.degree() >= 2 && rank(e.maps.front()) != e.kernel().dim)
        return fail("the kernel map is not injective");
    for (std::size_t i = 1; i < e.maps.size(); ++i) {
        if (!(e.maps[i - 1].matrix * e.maps[i].matrix).is_zero())
            return fail("consecutive maps at module " + std::to_string(i) + " do not compose to zero");
        if (e.modules[i].dim - rank(e.maps[i]) != rank(e.maps[i - 1]))
            return fail("not exact at module " + std::to_string(i));
    }
    std::uint64_t ker_count = 0;
    for (std::uint64_t v = 0; v < bsize; ++v)
        if (e.into_top[v] == 0)
            ++ker_count;
    std::uint64_t expect = 1;
    if (e.degree() >= 2) {
        const ModuleMap& last = e.maps.back();
        for (std::size_t i = 0; i < last.source.dim; ++i)
            if (e.into_top[vector_index(last.matrix.row(i), p)] != 0)
                return fail("the last module map does not compose to the identity in M_1");
        for (std::size_t i = 0; i < rank(last); ++i)
            expect *= p;
    }
    if (ker_count != expect)
        return fail("not exact at the last module");
    std::set<Elem> img(e.into_top.begin(), e.into_top.end());
    std::size_t kernel_size = 0;
    for (Elem x = 0; x < T.order(); ++x)
        if (e.to_base[x] == 0)
            ++kernel_size;
    for (Elem x : img)
        if (e.to_base[x] != 0)
            return fail("M_2 -> M_1 -> G is not trivial");
    if (img.size() != kernel_size)
        return fail("not exact at M_1");
    if (!central_in(kernel_subgroup(e.top, e.to_base)))
        return fail("the kernel of M_1 -> G is not central");
    auto cm = crossed_module_check(crossed_module_of(e));
    if (!cm.holds)
        return fail("crossed module axiom " + cm.axiom + " fails");
    return {};
}

CrossedExtension crossed_from_central(GroupPtr total, Elem kernel_generator, std::vector<Elem> quotient_map,
    GroupPtr base) {
    CrossedExtension e;
    e.base = base;
    e.top = total;
    e.to_base = std::move(quotient_map);
    e.modules = {trivial_module(base, 1)};
    for (residue_t a = 0; a < base->prime(); ++a)
        e.into_top.push_back(total->power(kernel_generator, a));
    return checked(std::move(e), "central extension");
}

CrossedExtension crossed_from_cocycle(const Cochain& z) {
    CentralExtension ce = cocycle_to_extension(z);
    return crossed_from_central(ce.total, ce.kernel_generator, ce.quotient_map, z.group());
}

CrossedExtension zero_crossed(GroupPtr g, std::size_t n, std::size_t kernel_dim) {
    if (n == 0)
        throw extension_error("crossed extensions have degree at least one");
    const auto& G = *g;
    const residue_t p = G.prime();
    GModule a = trivial_module(g, kernel_dim);
    CrossedExtension e;
    e.base = g;
    if (n == 1) {
        const auto& src = G.presentation();
        PcPresentation pcp(p, src.n_gens + kernel_dim);
        pcp.names = src.names;
        if (pcp.names.size() == src.n_gens)
            for (std::size_t i = 0; i < kernel_dim; ++i)
                pcp.names.push_back("z" + std::to_string(i + 1));
        else
            pcp.names.clear();
        auto widen = [&](Exponents w) {
            w.resize(src.n_gens + kernel_dim, 0);
            return w;
        };
        for (std::size_t i = 0; i < src.n_gens; ++i)
            pcp.set_power(i, widen(src.power_tails[i]));
        for (const auto& [key, w] : src.commutator_tails)
            pcp.set_commutator(key.first, key.second, widen(w));
        e.top = make_group(std::move(pcp), {}, G.label().empty() ? "" : G.label() + " x A");
        std::uint64_t ksize = a.size();
        for (Elem x = 0; x < e.top->order(); ++x)
            e.to_base.push_back(static_cast<Elem>(x / ksize));
        for (std::uint64_t v = 0; v < ksize; ++v)
            e.into_top.push_back(static_cast<Elem>(v));
        e.modules = {a};
        return checked(std::move(e), "zero extension");
    }
    GModule z = zero_module(g);
    e.modules = {a, a};
    for (std::size_t i = 0; i + 2 < n; ++i)
        e.modules.push_back(z);
    e.maps.push_back(identity_map(a));
    for (std::size_t i = 2; i < e.modules.size(); ++i)
        e.maps.push_back(zero_map(e.modules[i - 1], e.modules[i]));
    e.top = g;
    for (Elem x = 0; x < G.order(); ++x)
        e.to_base.push_back(x);
    e.into_top.assign(static_cast<std::size_t>(e.bottom().size()), 0);
    return checked(std::move(e), "zero extension");
}

CrossedExtension pushout(const CrossedExtension& e, const ModuleMap& alpha) {
    if (!same_module(alpha.source, e.kernel()))
        throw extension_error("pushout map must start at the kernel module");
    if (!is_equivariant(alpha))
        throw module_error("pushout map is not equivariant");
    const GModule& a2 = alpha.target;
    const residue_t p = a2.prime();
    const auto& T = *e.top;

    if (e.degree() == 1) {
        if (!e.kernel().is_trivial() || !a2.is_trivial())
            throw extension_error("degree-one pushout is implemented for trivial kernel modules");
        std::vector<Elem> sec = fiber_section(T, e.to_base, e.base->order());
        std::vector<Elem> kinv = inverse_table(e.into_top, T.order());
        const std::size_t da = e.kernel().dim, d2 = a2.dim;
        const FpMatrix amat = alpha.matrix;
        const FiniteGroup* tp = e.top.get();
        const std::vector<Elem>* tb = &e.to_base;
        auto nf = [tp, tb, sec, kinv, da, d2, amat, p](FpVector a, Elem m) -> Exponents {
            Elem s = sec[(*tb)[m]];
            Elem k = tp->multiply(m, tp->inverse(s));
            FpVector img = amat.left_apply(index_vector(kinv[k], da, p));
            Exponents out(d2 + 1);
            for (std::size_t i = 0; i < d2; ++i)
                out[i] = fp_add(a[i], img[i], p);
            out[d2] = s;
            return out;
        };
        GroupModel m;
        m.prime = p;
        m.identity = Exponents(d2 + 1, 0);
        for (std::size_t i = 0; i < e.base->n_gens(); ++i) {
            Exponents x(d2 + 1, 0);
            x[d2] = sec[e.base->generator(i)];
            m.pcgs.push_back(x);
            m.names.push_back(e.base->presentation().name(i));
        }
        for (std::size_t i = 0; i < d2; ++i) {
            Exponents x(d2 + 1, 0);
            x[i] = 1;
            m.pcgs.push_back(x);
            m.names.push_back("z" + std::to_string(i + 1));
        }
        m.mul = [nf, tp, d2, p](const Exponents& x, const Exponents& y) {
            FpVector a(d2);
            for (std::size_t i = 0; i < d2; ++i)
                a[i] = fp_add(x[i], y[i], p);
            return nf(a, tp->multiply(x[d2], y[d2]));
        };
        ModelGroup mg = group_from_model(m, {}, "pushout");
        CrossedExtension out;
        out.base = e.base;
        out.top = mg.group;
        out.modules = {a2};
        for (Elem x = 0; x < mg.group->order(); ++x)
            out.to_base.push_back(e.to_base[mg.elements[x][d2]]);
        for (std::uint64_t v = 0; v < a2.size(); ++v) {
            Exponents x(d2 + 1, 0);
            FpVector vv = index_vector(v, d2, p);
            std::copy(vv.begin(), vv.end(), x.begin());
            out.into_top.push_back(mg.at(x));
        }
        return checked(std::move(out), "pushout");
    }

    const GModule& mn = e.modules[1];
    GModule sum = direct_sum(a2, mn);
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
    FpMatrix drop(sum.dim, mn.dim, p); // (a', m) -> m
    for (std::size_t i = 0; i < mn.dim; ++i)
        drop.set(a2.dim + i, i, 1);

    CrossedExtension out = e;
    out.modules[0] = a2;
    out.modules[1] = q.module;
    out.maps[0] = make_map(a2, q.module, a_in * q.projection);
    if (e.degree() >= 3) {
        out.maps[1] = make_map(q.module, e.modules[2], q.lift * drop * e.maps[1].matrix);
    } else {
        FpMatrix to_m = q.lift * drop;
        out.into_top.clear();
        for (std::uint64_t v = 0; v < q.module.size(); ++v)
            out.into_top.push_back(e.into_top[vector_index(to_m.left_apply(index_vector(v, q.module.dim, p)), p)]);
    }
    return checked(std::move(out), "pushout");
}

CrossedExtension pullback(const CrossedExtension& e, GroupPtr source, const std::vector<Elem>& hom) {
    check_hom_table(*source, *e.base, hom, "pullback");
    Fiber f = fiber_product(e.top, e.to_base, e.base, source, hom);
    CrossedExtension out;
    out.base = source;
    out.top = f.mg.group;
    for (Elem x = 0; x < out.top->order(); ++x)
        out.to_base.push_back(f.mg.elements[x][1]);
    for (const auto& m : e.modules)
        out.modules.push_back(restrict_module(m, source, hom));
    for (std::size_t i = 0; i < e.maps.size(); ++i)
        out.maps.push_back(make_map(out.modules[i], out.modules[i + 1], e.maps[i].matrix));
    for (Elem t : e.into_top)
        out.into_top.push_back(f.mg.at({t, 0}));
    return checked(std::move(out), "pullback");
}

CrossedExtension baer_sum(const CrossedExtension& x, const CrossedExtension& y) {
    if (x.base != y.base || x.degree() != y.degree() || !same_module(x.kernel(), y.kernel()))
        throw extension_error("Baer sum needs crossed extensions with the same ends and degree");
    Fiber f = fiber_product(x.top, x.to_base, x.base, y.top, y.to_base);
    CrossedExtension s;
    s.base = x.base;
    s.top = f.mg.group;
    for (Elem t = 0; t < s.top->order(); ++t)
        s.to_base.push_back(x.to_base[f.mg.elements[t][0]]);
    for (std::size_t i = 0; i < x.modules.size(); ++i)
        s.modules.push_back(direct_sum(x.modules[i], y.modules[i]));
    for (std::size_t i = 0; i < x.maps.size(); ++i)
        s.maps.push_back(direct_sum(x.maps[i], y.maps[i]));
    const std::uint64_t ysize = y.bottom().size();
    for (std::uint64_t v = 0; v < x.bottom().size(); ++v)
        for (std::uint64_t w = 0; w < ysize; ++w)
            s.into_top.push_back(f.mg.at({x.into_top[v], y.into_top[w]}));
    s = checked(std::move(s), "fiber product");
    return pushout(s, codiagonal_map(x.kernel()));
}

CrossedExtension splice(const YonedaExtension& phi, const CrossedExtension& psi) {
    if (!same_module(phi.cokernel(), psi.kernel()))
        throw extension_error("splice: the right end of the Yoneda extension is not the kernel of the crossed one");
    const residue_t p = psi.base->prime();
    CrossedExtension out;
    out.base = psi.base;
    out.top = psi.top;
    out.to_base = psi.to_base;
    out.modules.assign(phi.modules.begin(), phi.modules.end() - 1);
    out.modules.insert(out.modules.end(), psi.modules.begin() + 1, psi.modules.end());
    out.maps.assign(phi.maps.begin(), phi.maps.end() - 1);
    if (psi.degree() >= 2) {
        out.maps.push_back(compose(phi.maps.back(), psi.maps.front()));
        out.maps.insert(out.maps.end(), psi.maps.begin() + 1, psi.maps.end());
        out.into_top = psi.into_top;
    } else {
        const ModuleMap& last = phi.maps.back();
        for (std::uint64_t v = 0; v < last.source.size(); ++v)
            out.into_top.push_back(psi.into_top[vector_index(last(index_vector(v, last.source.dim, p)), p)]);
    }
    return checked(std::move(out), "splice");
}

Cochain crossed_cocycle(const CrossedExtension& e) {
    const GModule& a = e.kernel();
    if (a.dim != 1 || !a.is_trivial())
        throw extension_error("the cocycle bridge needs the trivial module F_p as kernel");
    const auto& G = *e.base;
    const auto& T = *e.top;
    const std::size_t n = static_cast<std::size_t>(G.order());
    std::vector<Elem> sec = fiber_section(T, e.to_base, n);
    std::vector<Elem> lift = inverse_table(e.into_top, T.order());
    std::vector<Elem> sec_inv(n);
    for (Elem g = 0; g < n; ++g)
        sec_inv[g] = T.inverse(sec[g]);
    auto f = [&](Elem g, Elem h) {
        Elem k = T.multiply(T.multiply(sec[g], sec[h]), sec_inv[G.multiply(g, h)]);
        Elem v = lift[k];
        if (v == static_cast<Elem>(-1))
            throw extension_error("section defect is not in the image of the bottom module");
        return v;
    };
    if (e.degree() == 1)
        return cochain_from(e.base, 2, [&](const Elem* x) { return static_cast<residue_t>(f(x[0], x[1])); });

    const GModule& b = e.bottom();
    const residue_t p = G.prime();
    if (std::uint64_t{n} * n * b.dim > (1ull << 27))
        throw resource_error("crossed cocycle bridge: degree-two lift too large to store");
    std::vector<residue_t> u(n * n * b.dim, 0);
    for (Elem g = 1; g < n; ++g)
        for (Elem h = 1; h < n; ++h) {
            FpVector v = index_vector(f(g, h), b.dim, p);
            std::copy(v.begin(), v.end(), u.begin() + static_cast<long>((std::size_t{g} * n + h) * b.dim));
        }
    std::vector<ModuleMap> down(e.maps.rbegin(), e.maps.rend());
    return shift_down(e.base, 2, std::move(u), down);
}

bool equivalent(const CrossedExtension& x, const CrossedExtension& y) {
    Cochain d = crossed_cocycle(x) - crossed_cocycle(y);
    SolveBudget b;
    b.full = true;
    return is_coboundary(d, b).status == CoboundaryStatus::is_coboundary;
}

XDiagramWitness self_equivalence_witness(const CrossedExtension& psi) {
    if (psi.degree() != 2)
        throw extension_error("the X-diagram is for crossed 2-fold extensions");
    const GModule& m2 = psi.bottom();
    const residue_t p = m2.prime();
    const std::size_t d = m2.dim;
    auto acts = std::make_shared<std::vector<FpMatrix>>(all_actions(m2));
    GroupPtr top = psi.top;
    auto to_base = std::make_shared<std::vector<Elem>>(psi.to_base);

    GroupModel m;
    m.prime = p;
    m.identity = {0, 0};
    for (std::size_t i = 0; i < top->n_gens(); ++i) {
        m.pcgs.push_back({top->generator(i), 0});
        m.names.push_back(top->presentation().name(i));
    }
    auto flag = stable_flag_basis(m2);
    for (std::size_t i = 0; i < flag.size(); ++i) {
        m.pcgs.push_back({0, static_cast<residue_t>(vector_index(flag[i], p))});
        m.names.push_back("v" + std::to_string(i + 1));
    }
    m.mul = [top, acts, to_base, p, d](const Exponents& x, const Exponents& y) -> Exponents {
        FpVector v = (*acts)[(*to_base)[y[0]]].left_apply(index_vector(x[1], d, p));
        v = add(v, index_vector(y[1], d, p), p);
        return {top->multiply(x[0], y[0]), static_cast<residue_t>(vector_index(v, p))};
    };
    ModelGroup mg = group_from_model(m, {}, "X");

    XDiagramWitness w;
    w.x = mg.group;
    for (std::uint64_t v = 0; v < m2.size(); ++v) {
        w.mu1.push_back(mg.at({0, static_cast<residue_t>(v)}));
        FpVector minus = neg(index_vector(v, d, p), p);
        w.mu2.push_back(mg.at({psi.into_top[v], static_cast<residue_t>(vector_index(minus, p))}));
    }
    for (Elem x = 0; x < w.x->order(); ++x) {
        const Exponents& e = mg.elements[x];
        w.nu1.push_back(top->multiply(e[0], psi.into_top[e[1]]));
        w.nu2.push_back(e[0]);
    }
    return w;
}

XDiagramReport verify_x_diagram(const CrossedExtension& psi, const CrossedExtension& psi_prime, const XDiagramWitness& w) {
    if (psi.degree() != 2 || psi_prime.degree() != 2)
        throw extension_error("the X-diagram is for crossed 2-fold extensions");
    if (psi.base != psi_prime.base || !same_module(psi.kernel(), psi_prime.kernel()))
        throw extension_error("X-diagram: extensions do not share their ends");
    const auto& X = *w.x;
    const auto& M1 = *psi.top;
    const auto& N1 = *psi_prime.top;
    const GModule& m2 = psi.bottom();
    const GModule& n2 = psi_prime.bottom();
    const residue_t p = m2.prime();
    if (w.mu1.size() != m2.size() || w.mu2.size() != n2.size() || w.nu1.size() != X.order()
        || w.nu2.size() != X.order())
        throw extension_error("X-diagram witness has maps of the wrong size");

    XDiagramReport rep;
    auto add_cond = [&](std::string name, bool ok, std::string detail) {
        rep.conditions.push_back({std::move(name), ok, std::move(detail)});
    };

    // homomorphisms
    bool homs = true;
    std::string hom_detail = "mu1, mu2, nu1, nu2 are homomorphisms";
    auto additive = [&](const std::vector<Elem>& mu, const GModule& m) {
        for (std::uint64_t v = 0; v < m.size(); ++v) {
            FpVector vv = index_vector(v, m.dim, p);
            for (std::size_t i = 0; i < m.dim; ++i) {
                FpVector e(m.dim, 0);
                e[i] = 1;
                if (mu[vector_index(add(vv, e, p), p)] != X.multiply(mu[v], mu[vector_index(e, p)]))
                    return false;
            }
        }
        return true;
    };
    auto group_hom = [&](const std::vector<Elem>& nu, const FiniteGroup& t) {
        for (Elem x = 0; x < X.order(); ++x)
            for (std::size_t k = 0; k < X.n_gens(); ++k)
                if (nu[X.right_gen(x, k)] != t.multiply(nu[x], nu[X.generator(k)]))
                    return false;
        return true;
    };
    if (!additive(w.mu1, m2) || !additive(w.mu2, n2) || !group_hom(w.nu1, M1) || !group_hom(w.nu2, N1)) {
        homs = false;
        hom_detail = "a diagram map is not a homomorphism";
    }
    add_cond("homomorphisms", homs, hom_detail);

    // commutativity
    bool comm = true;
    for (std::uint64_t v = 0; v < m2.size() && comm; ++v)
        comm = w.nu1[w.mu1[v]] == psi.into_top[v];
    for (std::uint64_t v = 0; v < n2.size() && comm; ++v)
        comm = w.nu2[w.mu2[v]] == psi_prime.into_top[v];
    for (Elem x = 0; x < X.order() && comm; ++x)
        comm = psi.to_base[w.nu1[x]] == psi_prime.to_base[w.nu2[x]];
    add_cond("commutative", comm, comm ? "both triangles and the square to G commute" : "diagram does not commute");

    // (a)
    bool cond_a = true;
    const GModule& a = psi.kernel();
    for (std::uint64_t v = 0; v < a.size() && cond_a; ++v) {
        FpVector av = index_vector(v, a.dim, p);
        Elem lhs = w.mu1[vector_index(psi.maps[0](av), p)];
        Elem rhs = w.mu2[vector_index(psi_prime.maps[0](neg(av, p)), p)];
        cond_a = lhs == rhs;
    }
    add_cond("(a)", cond_a, cond_a ? "mu1 rho2 = mu2 (-tau2) on A" : "mu1 rho2 differs from mu2 (-tau2)");

    // (b)
    auto diagonal = [&](const std::vector<Elem>& mu, const std::vector<Elem>& nu, const FiniteGroup& t) {
        std::set<Elem> img(mu.begin(), mu.end());
        if (img.size() != mu.size())
            return false;
        std::set<Elem> hit(nu.begin(), nu.end());
        if (hit.size() != t.order())
            return false;
        std::size_t ker = 0;
        for (Elem x = 0; x < X.order(); ++x)
            if (nu[x] == 0) {
                ++ker;
                if (!img.count(x))
                    return false;
            }
        return ker == img.size();
    };
    bool cond_b = diagonal(w.mu1, w.nu2, N1) && diagonal(w.mu2, w.nu1, M1);
    add_cond("(b)", cond_b, cond_b ? "both diagonals are short exact" : "a diagonal is not short exact");

    // (c)
    std::set<Elem> im1(w.mu1.begin(), w.mu1.end()), im2(w.mu2.begin(), w.mu2.end()), inter, from_a;
    for (Elem x : im1)
        if (im2.count(x))
            inter.insert(x);
    for (std::uint64_t v = 0; v < a.size(); ++v)
        from_a.insert(w.mu1[vector_index(psi.maps[0](index_vector(v, a.dim, p)), p)]);
    bool cond_c = inter == from_a;
    add_cond("(c)", cond_c, "|mu1(rho2(A))| = " + std::to_string(from_a.size()) + ", |mu1(M2) & mu2(N2)| = "
            + std::to_string(inter.size()));

    // (d)
    auto acts_m = all_actions(m2);
    auto acts_n = all_actions(n2);
    bool cond_d = true;
    for (Elem x = 0; x < X.order() && cond_d; ++x) {
        const FpMatrix& am = acts_m[psi.to_base[w.nu1[x]]];
        const FpMatrix& an = acts_n[psi_prime.to_base[w.nu2[x]]];
        for (std::uint64_t v = 0; v < m2.size() && cond_d; ++v)
            cond_d = X.conjugate(w.mu1[v], x) == w.mu1[vector_index(am.left_apply(index_vector(v, m2.dim, p)), p)];
        for (std::uint64_t v = 0; v < n2.size() && cond_d; ++v)
            cond_d = X.conjugate(w.mu2[v], x) == w.mu2[vector_index(an.left_apply(index_vector(v, n2.dim, p)), p)];
    }
    add_cond("(d)", cond_d, cond_d ? "conjugation in X matches both actions" : "conjugation in X differs from an action");

    rep.holds = true;
    for (const auto& c : rep.conditions)
        rep.holds = rep.holds && c.holds;
    return rep;
}

} // namespace cohomoforge

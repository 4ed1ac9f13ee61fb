#include "cohomoforge/group_ops.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace cohomoforge {

namespace {

std::size_t depth_of(const FiniteGroup& g, Elem x) {
    for (std::size_t i = 0; i < g.n_gens(); ++i)
        if (g.exponent_at(x, i))
            return i;
    return g.n_gens();
}

// induced pcgs of an element set that is already known to be a subgroup
std::vector<Elem> induced_pcgs(const FiniteGroup& g, const std::vector<Elem>& elements) {
    const std::size_t n = g.n_gens();
    const residue_t p = g.prime();
    std::vector<std::optional<Elem>> tab(n);
    std::size_t found = 0;
    const std::size_t target = log_p(elements.size(), p);
    for (Elem x : elements) {
        if (found == target)
            break;
        while (x != 0) {
            std::size_t d = depth_of(g, x);
            residue_t lead = g.exponent_at(x, d);
            if (tab[d]) {
                x = g.multiply(x, g.power(*tab[d], p - lead));
                continue;
            }
            tab[d] = g.power(x, fp_inv(lead, p));
            ++found;
            break;
        }
    }
    std::vector<Elem> out;
    for (auto& t : tab)
        if (t)
            out.push_back(*t);
    return out;
}

std::optional<std::vector<Elem>> closure(const FiniteGroup& g, const std::vector<Elem>& gens, std::size_t limit) {
    std::vector<char> mark(static_cast<std::size_t>(g.order()), 0);
    std::vector<Elem> found{0};
    mark[0] = 1;
    for (std::size_t head = 0; head < found.size(); ++head) {
        Elem x = found[head];
        for (Elem s : gens) {
            Elem y = g.multiply(x, s);
            if (!mark[y]) {
                mark[y] = 1;
                found.push_back(y);
                if (found.size() > limit)
                    return std::nullopt;
            }
        }
    }
    std::sort(found.begin(), found.end());
    return found;
}

void require_same(const GroupPtr& a, const GroupPtr& b) {
    if (a != b)
        throw parent_mismatch("subgroups belong to different groups");
}

bool is_order_p(const FiniteGroup& g, Elem x) {
    return x != 0 && g.power(x, g.prime()) == 0;
}

} // namespace

std::size_t log_p(std::uint64_t order, residue_t p) {
    std::size_t k = 0;
    while (order > 1) {
        order /= p;
        ++k;
    }
    return k;
}

bool Subgroup::contains(Elem x) const {
    return std::binary_search(elements.begin(), elements.end(), x);
}

Subgroup make_subgroup(GroupPtr g, std::vector<Elem> elements) {
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    Subgroup s;
    s.generators = induced_pcgs(*g, elements);
    s.elements = std::move(elements);
    s.parent = std::move(g);
    return s;
}

Subgroup subgroup_generated(GroupPtr g, const std::vector<Elem>& gens) {
    auto el = closure(*g, gens, static_cast<std::size_t>(g->order()));
    return make_subgroup(std::move(g), std::move(*el));
}

Subgroup trivial_subgroup(GroupPtr g) {
    return make_subgroup(std::move(g), {0});
}

Subgroup whole_group(GroupPtr g) {
    Subgroup s;
    s.elements.resize(static_cast<std::size_t>(g->order()));
    for (std::size_t i = 0; i < s.elements.size(); ++i)
        s.elements[i] = static_cast<Elem>(i);
    for (std::size_t i = 0; i < g->n_gens(); ++i)
        s.generators.push_back(g->generator(i));
    s.parent = std::move(g);
    return s;
}

bool is_subgroup_of(const Subgroup& a, const Subgroup& b) {
    return a.parent == b.parent && std::includes(b.elements.begin(), b.elements.end(), a.elements.begin(), a.elements.end());
}

bool is_normal(const Subgroup& s) {
    const auto& g = *s.parent;
    for (Elem h : s.generators)
        for (std::size_t i = 0; i < g.n_gens(); ++i)
            if (!s.contains(g.conjugate(h, g.generator(i))))
                return false;
    return true;
}

bool is_abelian(const Subgroup& s) {
    const auto& g = *s.parent;
    for (std::size_t i = 0; i < s.generators.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (g.commutator(s.generators[i], s.generators[j]) != 0)
                return false;
    return true;
}

bool is_elementary_abelian(const Subgroup& s) {
    if (!is_abelian(s))
        return false;
    for (Elem h : s.generators)
        if (!is_order_p(*s.parent, h))
            return false;
    return true;
}

Subgroup commutator_subgroup(const Subgroup& a, const Subgroup& b) {
    require_same(a.parent, b.parent);
    const auto& g = *a.parent;
    std::vector<Elem> gens;
    for (Elem x : a.generators)
        for (Elem y : b.generators)
            if (Elem c = g.commutator(x, y); c != 0)
                gens.push_back(c);
    Subgroup c = subgroup_generated(a.parent, gens);
    std::vector<Elem> conj;
    conj.insert(conj.end(), a.generators.begin(), a.generators.end());
    conj.insert(conj.end(), b.generators.begin(), b.generators.end());
    for (bool grew = true; grew;) {
        grew = false;
        for (Elem h : c.generators) {
            for (Elem t : conj) {
                Elem y = g.conjugate(h, t);
                if (!c.contains(y)) {
                    gens.push_back(y);
                    grew = true;
                }
            }
        }
        if (grew)
            c = subgroup_generated(a.parent, gens);
    }
    return c;
}

std::vector<Subgroup> lower_central_series(GroupPtr g) {
    std::vector<Subgroup> series{whole_group(g)};
    Subgroup all = series.front();
    while (!series.back().is_trivial()) {
        Subgroup next = commutator_subgroup(series.back(), all);
        if (next.order() == series.back().order())
            break;
        series.push_back(std::move(next));
    }
    return series;
}

Subgroup center(GroupPtr g) {
    return centralizer(g, whole_group(g));
}

Subgroup centralizer(GroupPtr g, const Subgroup& s) {
    require_same(g, s.parent);
    std::vector<Elem> out;
    for (Elem x = 0; x < g->order(); ++x) {
        bool ok = true;
        for (Elem h : s.generators) {
            if (g->multiply(x, h) != g->multiply(h, x)) {
                ok = false;
                break;
            }
        }
        if (ok)
            out.push_back(x);
    }
    return make_subgroup(std::move(g), std::move(out));
}

std::uint64_t element_order(const FiniteGroup& g, Elem x) {
    std::uint64_t k = 1;
    for (Elem y = x; y != 0; y = g.multiply(y, x))
        ++k;
    return x == 0 ? 1 : k;
}

std::uint64_t exponent_of(GroupPtr g) {
    return exponent_of(whole_group(std::move(g)));
}

std::uint64_t exponent_of(const Subgroup& s) {
    std::uint64_t e = 1;
    for (Elem x : s.elements)
        e = std::max(e, element_order(*s.parent, x));
    return e;
}

std::vector<Subgroup> enumerate_elementary_abelian(GroupPtr g, std::size_t s) {
    if (s == 0 || s > g->n_gens())
        return {};
    const auto& G = *g;
    const residue_t p = G.prime();
    std::set<std::vector<Elem>> level;
    for (Elem x = 1; x < G.order(); ++x) {
        if (!is_order_p(G, x))
            continue;
        std::vector<Elem> cyc{0};
        bool minimal = true;
        for (Elem y = x; y != 0; y = G.multiply(y, x)) {
            if (y < x)
                minimal = false;
            cyc.push_back(y);
        }
        if (!minimal)
            continue;
        std::sort(cyc.begin(), cyc.end());
        level.insert(std::move(cyc));
    }
    for (std::size_t rank = 2; rank <= s && !level.empty(); ++rank) {
        std::set<std::vector<Elem>> next;
        for (const auto& e : level) {
            Subgroup es = make_subgroup(g, e);
            Subgroup c = centralizer(g, es);
            for (Elem y : c.elements) {
                if (es.contains(y) || !is_order_p(G, y))
                    continue;
                std::vector<Elem> bigger;
                bigger.reserve(e.size() * p);
                Elem yk = 0;
                for (residue_t k = 0; k < p; ++k) {
                    for (Elem x : e)
                        bigger.push_back(G.multiply(x, yk));
                    yk = G.multiply(yk, y);
                }
                std::sort(bigger.begin(), bigger.end());
                next.insert(std::move(bigger));
            }
        }
        level = std::move(next);
    }
    std::vector<Subgroup> out;
    for (const auto& e : level)
        out.push_back(make_subgroup(g, e));
    return out;
}

std::size_t p_rank(const Subgroup& s) {
    const auto& g = *s.parent;
    if (is_abelian(s)) {
        std::size_t omega = 0;
        for (Elem x : s.elements)
            if (x == 0 || is_order_p(g, x))
                ++omega;
        return log_p(omega, g.prime());
    }
    SubgroupGroup sg = as_group(s);
    std::size_t best = 0;
    for (std::size_t k = 1; k <= sg.group->n_gens(); ++k) {
        if (enumerate_elementary_abelian(sg.group, k).empty())
            break;
        best = k;
    }
    return best;
}

std::vector<Elem> small_generating_set(const Subgroup& s) {
    std::vector<Elem> kept;
    Subgroup span = trivial_subgroup(s.parent);
    for (Elem h : s.generators) {
        if (span.contains(h))
            continue;
        kept.push_back(h);
        span = subgroup_generated(s.parent, kept);
    }
    return kept;
}

std::optional<Subgroup> has_complement(GroupPtr total, const Subgroup& kernel) {
    require_same(total, kernel.parent);
    if (!is_normal(kernel))
        throw not_normal("kernel is not a normal subgroup");
    const auto& g = *total;
    const std::size_t q = static_cast<std::size_t>(g.order() / kernel.order());

    std::vector<Elem> lifts;
    std::vector<Elem> span_gens = kernel.generators;
    Subgroup span = subgroup_generated(total, span_gens);
    for (std::size_t i = 0; i < g.n_gens() && span.order() < g.order(); ++i) {
        Elem t = g.generator(i);
        if (span.contains(t))
            continue;
        lifts.push_back(t);
        span_gens.push_back(t);
        span = subgroup_generated(total, span_gens);
    }

    const std::size_t m = lifts.size();
    const std::size_t nk = kernel.order();
    std::vector<std::size_t> choice(m, 0);
    while (true) {
        std::vector<Elem> gens(m);
        for (std::size_t i = 0; i < m; ++i)
            gens[i] = g.multiply(lifts[i], kernel.elements[choice[i]]);
        if (auto el = closure(g, gens, q); el && el->size() == q)
            return make_subgroup(total, std::move(*el));
        std::size_t k = m;
        while (k > 0) {
            --k;
            if (++choice[k] < nk)
                break;
            choice[k] = 0;
            if (k == 0)
                return std::nullopt;
        }
        if (m == 0)
            return std::nullopt;
    }
}

Elem SubgroupGroup::local(Elem parent_elem) const {
    auto it = std::lower_bound(from_parent.begin(), from_parent.end(), std::make_pair(parent_elem, Elem{0}));
    if (it == from_parent.end() || it->first != parent_elem)
        throw parent_mismatch("element is not in the subgroup");
    return it->second;
}

SubgroupGroup as_group(const Subgroup& s, GroupOptions opts, std::string label) {
    const auto& g = *s.parent;
    const residue_t p = g.prime();
    const auto& h = s.generators;
    const std::size_t m = h.size();
    std::vector<std::size_t> depth(m);
    std::vector<Elem> hinv(m);
    for (std::size_t k = 0; k < m; ++k) {
        depth[k] = depth_of(g, h[k]);
        hinv[k] = g.inverse(h[k]);
    }
    auto sift = [&](Elem x) {
        Exponents c(m, 0);
        for (std::size_t k = 0; k < m; ++k) {
            residue_t e = g.exponent_at(x, depth[k]);
            c[k] = e;
            if (e)
                x = g.multiply(g.power(hinv[k], e), x);
        }
        if (x != 0)
            throw parent_mismatch("element is not in the subgroup");
        return c;
    };

    PcPresentation pcp(p, m);
    for (std::size_t i = 0; i < m; ++i) {
        pcp.names.push_back("h" + std::to_string(i + 1));
        pcp.set_power(i, sift(g.power(h[i], p)));
        for (std::size_t j = 0; j < i; ++j)
            pcp.set_commutator(i, j, sift(g.commutator(h[i], h[j])));
    }
    SubgroupGroup out;
    out.group = make_group(std::move(pcp), opts, std::move(label));
    const std::size_t ord = static_cast<std::size_t>(out.group->order());
    out.to_parent.assign(ord, 0);
    std::vector<std::uint64_t> radix(m, 1);
    for (std::size_t i = m; i-- > 1;)
        radix[i - 1] = radix[i] * p;
    for (std::size_t idx = 1; idx < ord; ++idx) {
        std::size_t k = m - 1;
        while ((idx / radix[k]) % p == 0)
            --k;
        out.to_parent[idx] = g.multiply(out.to_parent[idx - radix[k]], h[k]);
    }
    out.from_parent.reserve(ord);
    for (std::size_t idx = 0; idx < ord; ++idx)
        out.from_parent.emplace_back(out.to_parent[idx], static_cast<Elem>(idx));
    std::sort(out.from_parent.begin(), out.from_parent.end());
    return out;
}

Elem ModelGroup::at(const Exponents& model_elem) const {
    auto it = index.find(model_elem);
    if (it == index.end())
        throw model_error("element is not in the model group");
    return it->second;
}

ModelGroup group_from_model(const GroupModel& m, GroupOptions opts, std::string label, std::uint64_t exhaustive_limit) {
    const std::size_t n = m.pcgs.size();
    const residue_t p = m.prime;
    std::uint64_t order = 1;
    for (std::size_t i = 0; i < n; ++i)
        order *= p;
    std::vector<std::uint64_t> radix(n, 1);
    for (std::size_t i = n; i-- > 1;)
        radix[i - 1] = radix[i] * p;

    ModelGroup out;
    out.elements.resize(static_cast<std::size_t>(order));
    out.elements[0] = m.identity;
    out.index[m.identity] = 0;
    for (std::size_t idx = 1; idx < order; ++idx) {
        std::size_t k = n - 1;
        while ((idx / radix[k]) % p == 0)
            --k;
        out.elements[idx] = m.mul(out.elements[idx - radix[k]], m.pcgs[k]);
        if (!out.index.emplace(out.elements[idx], static_cast<Elem>(idx)).second)
            throw model_error("model generators do not form a polycyclic sequence (repeated normal word)");
    }
    auto exps = [&](const Exponents& x) {
        auto it = out.index.find(x);
        if (it == out.index.end())
            throw model_error("model product leaves the enumerated element set");
        Exponents c(n);
        std::uint64_t rem = it->second;
        for (std::size_t i = 0; i < n; ++i) {
            c[i] = static_cast<residue_t>(rem / radix[i]);
            rem %= radix[i];
        }
        return c;
    };
    auto pw = [&](const Exponents& x, std::uint64_t e) {
        Exponents acc = m.identity;
        for (std::uint64_t k = 0; k < e; ++k)
            acc = m.mul(acc, x);
        return acc;
    };
    auto inv = [&](const Exponents& x) {
        Exponents prev = m.identity, cur = x;
        for (std::uint64_t k = 0; k <= order; ++k) {
            if (cur == m.identity)
                return prev;
            prev = cur;
            cur = m.mul(cur, x);
        }
        throw model_error("model element has no finite order");
    };

    PcPresentation pcp(p, n);
    pcp.names = m.names;
    std::vector<Exponents> invs(n);
    for (std::size_t i = 0; i < n; ++i)
        invs[i] = inv(m.pcgs[i]);
    for (std::size_t i = 0; i < n; ++i) {
        pcp.set_power(i, exps(pw(m.pcgs[i], p)));
        for (std::size_t j = 0; j < i; ++j) {
            Exponents c = m.mul(m.mul(invs[i], invs[j]), m.mul(m.pcgs[i], m.pcgs[j]));
            pcp.set_commutator(i, j, exps(c));
        }
    }
    out.group = make_group(std::move(pcp), opts, std::move(label));

    const auto& G = *out.group;
    auto check = [&](Elem a, Elem b) {
        if (out.elements[G.multiply(a, b)] != m.mul(out.elements[a], out.elements[b]))
            throw model_error("pc presentation does not reproduce the model product at ("
                + G.format(a) + ", " + G.format(b) + ")");
    };
    if (order <= exhaustive_limit) {
        for (Elem a = 0; a < order; ++a)
            for (Elem b = 0; b < order; ++b)
                check(a, b);
    } else {
        std::mt19937_64 rng(0x5eed);
        std::uniform_int_distribution<std::uint64_t> pick(0, order - 1);
        for (int t = 0; t < 20000; ++t)
            check(static_cast<Elem>(pick(rng)), static_cast<Elem>(pick(rng)));
    }
    return out;
}

} // namespace cohomoforge

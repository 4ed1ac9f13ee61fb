#include "cohomoforge/cochain.hpp"

#include <algorithm>
#include <random>

namespace cohomoforge {

namespace {

std::size_t tuple_count(std::uint64_t order, std::size_t degree) {
    std::uint64_t m = order - 1, c = 1;
    for (std::size_t i = 0; i < degree; ++i) {
        c *= m;
        if (c > (1ull << 27))
            throw resource_error("cochain of degree " + std::to_string(degree) + " on a group of order "
                + std::to_string(order) + " is too large to store; use a lazy view");
    }
    return static_cast<std::size_t>(c);
}

bool has_identity(const Elem* args, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        if (args[i] == 0)
            return true;
    return false;
}

// advance a tuple of non-identity elements in lexicographic order
bool next_tuple(std::vector<Elem>& t, Elem order) {
    for (std::size_t i = t.size(); i-- > 0;) {
        if (++t[i] < order)
            return true;
        t[i] = 1;
    }
    return false;
}

} // namespace

Cochain::Cochain(GroupPtr g, std::size_t degree)
    : g_(std::move(g)), deg_(degree), v_(tuple_count(g_->order(), degree), 0) {}

std::size_t Cochain::index(const Elem* args) const {
    const std::size_t m = static_cast<std::size_t>(g_->order() - 1);
    std::size_t idx = 0;
    for (std::size_t i = 0; i < deg_; ++i)
        idx = idx * m + (args[i] - 1);
    return idx;
}

void Cochain::tuple_of(std::size_t idx, Elem* out) const {
    const std::size_t m = static_cast<std::size_t>(g_->order() - 1);
    for (std::size_t i = deg_; i-- > 0;) {
        out[i] = static_cast<Elem>(idx % m + 1);
        idx /= m;
    }
}

residue_t Cochain::at(const Elem* args) const {
    if (has_identity(args, deg_))
        return 0;
    return v_[index(args)];
}

residue_t Cochain::operator()(std::initializer_list<Elem> args) const {
    if (args.size() != deg_)
        throw cochain_error("wrong number of arguments for a degree " + std::to_string(deg_) + " cochain");
    return at(args.begin());
}

void Cochain::set(const Elem* args, residue_t v) {
    if (has_identity(args, deg_)) {
        if (v % prime() != 0)
            throw cochain_error("normalized cochains vanish on tuples containing the identity");
        return;
    }
    v_[index(args)] = static_cast<std::uint16_t>(v % prime());
}

void Cochain::set(std::initializer_list<Elem> args, residue_t v) {
    if (args.size() != deg_)
        throw cochain_error("wrong number of arguments for a degree " + std::to_string(deg_) + " cochain");
    set(args.begin(), v);
}

bool Cochain::is_zero() const {
    return std::all_of(v_.begin(), v_.end(), [](std::uint16_t x) { return x == 0; });
}

Cochain Cochain::operator+(const Cochain& o) const {
    if (g_ != o.g_ || deg_ != o.deg_)
        throw cochain_error("adding cochains of different groups or degrees");
    Cochain out = *this;
    for (std::size_t i = 0; i < v_.size(); ++i)
        out.v_[i] = static_cast<std::uint16_t>(fp_add(v_[i], o.v_[i], prime()));
    return out;
}

Cochain Cochain::operator-(const Cochain& o) const {
    return *this + o.scaled(prime() - 1);
}

Cochain Cochain::scaled(residue_t c) const {
    Cochain out = *this;
    for (auto& x : out.v_)
        x = static_cast<std::uint16_t>(fp_mul(x, c % prime(), prime()));
    return out;
}

residue_t CochainView::at(const Elem* args) const {
    return has_identity(args, degree) ? 0 : eval(args);
}

CochainView view(const Cochain& c) {
    auto shared = std::make_shared<Cochain>(c);
    return {c.group(), c.degree(), [shared](const Elem* a) { return shared->at(a); }};
}

Cochain materialize(const CochainView& v) {
    return cochain_from(v.group, v.degree, v.eval);
}

Cochain cochain_from(GroupPtr g, std::size_t degree, const std::function<residue_t(const Elem*)>& f) {
    Cochain c(std::move(g), degree);
    std::vector<Elem> t(degree);
    for (std::size_t idx = 0; idx < c.size(); ++idx) {
        c.tuple_of(idx, t.data());
        c.set_value(idx, f(t.data()) % c.prime());
    }
    return c;
}

residue_t differential_at(const CochainView& c, const Elem* args) {
    const auto& g = *c.group;
    const residue_t p = g.prime();
    const std::size_t n = c.degree;
    Elem buf[max_pc_gens + 8];
    residue_t acc = c.at(args + 1);
    for (std::size_t i = 1; i <= n; ++i) {
        std::size_t k = 0;
        for (std::size_t j = 0; j < n + 1; ++j) {
            if (j == i - 1) {
                buf[k++] = g.multiply(args[j], args[j + 1]);
                ++j;
            } else {
                buf[k++] = args[j];
            }
        }
        residue_t v = c.at(buf);
        acc = (i % 2) ? fp_sub(acc, v, p) : fp_add(acc, v, p);
    }
    residue_t last = c.at(args);
    acc = ((n + 1) % 2) ? fp_sub(acc, last, p) : fp_add(acc, last, p);
    return acc;
}

Cochain differential(const Cochain& c) {
    CochainView v = view(c);
    return cochain_from(c.group(), c.degree() + 1, [&](const Elem* a) { return differential_at(v, a); });
}

Cochain cup(const Cochain& u, const Cochain& v) {
    if (u.group() != v.group())
        throw cochain_error("cup product of cochains on different groups");
    const std::size_t m = u.degree();
    const residue_t p = u.prime();
    return cochain_from(u.group(), m + v.degree(), [&](const Elem* a) { return fp_mul(u.at(a), v.at(a + m), p); });
}

CochainView cup_view(const CochainView& u, const CochainView& v) {
    if (u.group != v.group)
        throw cochain_error("cup product of cochains on different groups");
    const std::size_t m = u.degree;
    const residue_t p = u.group->prime();
    return {u.group, u.degree + v.degree, [u, v, m, p](const Elem* a) { return fp_mul(u.at(a), v.at(a + m), p); }};
}

Cochain restrict(const CochainView& c, const SubgroupGroup& sub) {
    std::vector<Elem> mapped(c.degree);
    return cochain_from(sub.group, c.degree, [&](const Elem* a) {
        for (std::size_t i = 0; i < c.degree; ++i)
            mapped[i] = sub.to_parent[a[i]];
        return c.at(mapped.data());
    });
}

Cochain restrict(const Cochain& c, const SubgroupGroup& sub) {
    return restrict(view(c), sub);
}

Cochain restrict(const Cochain& c, const Subgroup& sub) {
    if (sub.parent != c.group())
        throw parent_mismatch("restriction to a subgroup of a different group");
    return restrict(c, as_group(sub));
}

Cochain pull_back(const Cochain& c, GroupPtr source, const std::vector<Elem>& hom) {
    if (hom.size() != source->order())
        throw cochain_error("homomorphism table has the wrong length");
    std::vector<Elem> mapped(c.degree());
    return cochain_from(std::move(source), c.degree(), [&](const Elem* a) {
        for (std::size_t i = 0; i < c.degree(); ++i)
            mapped[i] = hom[a[i]];
        return c.at(mapped.data());
    });
}

Cochain coordinate_cochain(GroupPtr g, std::size_t k) {
    const auto& G = *g;
    return cochain_from(g, 1, [&](const Elem* a) { return G.exponent_at(a[0], k); });
}

ClosureCheck check_closed(const CochainView& c, std::uint64_t exhaustive_limit, std::uint64_t samples) {
    ClosureCheck out;
    const std::uint64_t order = c.group->order();
    const std::size_t m = c.degree + 1;
    if (order == 1)
        return out;
    long double total = 1;
    for (std::size_t i = 0; i < m; ++i)
        total *= static_cast<long double>(order - 1);
    std::vector<Elem> t(m, 1);
    if (total <= static_cast<long double>(exhaustive_limit)) {
        do {
            ++out.tuples_checked;
            if (differential_at(c, t.data()) != 0) {
                out.closed = false;
                return out;
            }
        } while (next_tuple(t, static_cast<Elem>(order)));
        return out;
    }
    out.exhaustive = false;
    std::mt19937_64 rng(0xc0c1c1e);
    std::uniform_int_distribution<std::uint64_t> pick(1, order - 1);
    for (std::uint64_t s = 0; s < samples; ++s) {
        for (auto& x : t)
            x = static_cast<Elem>(pick(rng));
        ++out.tuples_checked;
        if (differential_at(c, t.data()) != 0) {
            out.closed = false;
            return out;
        }
    }
    return out;
}

ClosureCheck check_closed(const Cochain& c, std::uint64_t exhaustive_limit, std::uint64_t samples) {
    const auto& g = *c.group();
    const std::uint64_t order = g.order();
    const std::size_t deg = c.degree();
    long double total = 1;
    for (std::size_t i = 0; i <= deg; ++i)
        total *= static_cast<long double>(order - 1);
    if (deg != 2 && deg != 3)
        return check_closed(view(c), exhaustive_limit, samples);
    if (order == 1)
        return {};
    if (total > static_cast<long double>(exhaustive_limit))
        return check_closed(view(c), exhaustive_limit, samples);

    // direct index arithmetic on the stored table
    const residue_t p = g.prime();
    const std::size_t M = static_cast<std::size_t>(order - 1);
    const auto& v = c.raw();
    const Elem n = static_cast<Elem>(order);
    ClosureCheck out;
    out.tuples_checked = static_cast<std::uint64_t>(total);
    auto z2 = [&](Elem x, Elem y) -> std::uint64_t { return (x && y) ? v[(x - 1) * M + (y - 1)] : 0; };
    if (deg == 2) {
        for (Elem a = 1; a < n; ++a)
            for (Elem b = 1; b < n; ++b) {
                Elem ab = g.multiply(a, b);
                for (Elem d = 1; d < n; ++d) {
                    Elem bd = g.multiply(b, d);
                    std::uint64_t s = z2(b, d) + z2(a, bd) + 2ull * p - z2(ab, d) - z2(a, b);
                    if (s % p) {
                        out.closed = false;
                        return out;
                    }
                }
            }
        return out;
    }
    auto z3 = [&](Elem x, Elem y, Elem w) -> std::uint64_t {
        return (x && y && w) ? v[((x - 1) * M + (y - 1)) * M + (w - 1)] : 0;
    };
    for (Elem a = 1; a < n; ++a)
        for (Elem b = 1; b < n; ++b) {
            Elem ab = g.multiply(a, b);
            for (Elem cc = 1; cc < n; ++cc) {
                Elem bc = g.multiply(b, cc);
                std::uint64_t fixed = z3(a, b, cc);
                for (Elem d = 1; d < n; ++d) {
                    Elem cd = g.multiply(cc, d);
                    std::uint64_t s = z3(b, cc, d) + z3(a, bc, d) + fixed + 2ull * p - z3(ab, cc, d) - z3(a, b, cd);
                    if (s % p) {
                        out.closed = false;
                        return out;
                    }
                }
            }
        }
    return out;
}

ExtensionCocycle extension_to_cocycle(GroupPtr total, const Subgroup& kernel, Elem generator_choice, GroupPtr base) {
    const auto& T = *total;
    const residue_t p = T.prime();
    if (kernel.parent != total)
        throw parent_mismatch("kernel is not a subgroup of the total group");
    if (kernel.order() != p)
        throw cochain_error("kernel must have order p");
    for (std::size_t i = 0; i < T.n_gens(); ++i)
        if (T.commutator(kernel.generators[0], T.generator(i)) != 0)
            throw cochain_error("kernel is not central");
    if (generator_choice == 0 || !kernel.contains(generator_choice))
        throw cochain_error("generator choice must be a non-identity kernel element");

    const Elem k0 = kernel.generators[0];
    std::size_t d = 0;
    while (T.exponent_at(k0, d) == 0)
        ++d;
    const residue_t lambda_inv = fp_inv(T.exponent_at(generator_choice, d), p);

    auto rep = [&](Elem x) {
        residue_t e = T.exponent_at(x, d);
        return e ? T.multiply(x, T.power(k0, p - e)) : x;
    };
    auto drop = [&](Elem x) {
        Exponents e = T.exponents(x);
        e.erase(e.begin() + static_cast<long>(d));
        return e;
    };

    const std::size_t n = T.n_gens() - 1;
    PcPresentation pcp(p, n);
    for (std::size_t i = 0; i <= n; ++i)
        if (i != d)
            pcp.names.push_back(T.presentation().name(i));
    auto qi = [&](std::size_t i) { return i < d ? i : i - 1; };
    for (std::size_t i = 0; i <= n; ++i) {
        if (i == d)
            continue;
        pcp.set_power(qi(i), drop(rep(T.power(T.generator(i), p))));
        for (std::size_t j = 0; j < i; ++j)
            if (j != d)
                pcp.set_commutator(qi(i), qi(j), drop(rep(T.commutator(T.generator(i), T.generator(j)))));
    }

    ExtensionCocycle out;
    if (base) {
        const auto& bp = base->presentation();
        if (bp.prime != pcp.prime || bp.n_gens != pcp.n_gens || bp.power_tails != pcp.power_tails
            || bp.commutator_tails != pcp.commutator_tails)
            throw cochain_error("quotient presentation differs from the supplied base group");
        out.quotient = std::move(base);
    } else {
        out.quotient = make_group(std::move(pcp), {}, T.label().empty() ? "" : T.label() + "/kernel");
    }
    const auto& Q = *out.quotient;
    out.quotient_map.resize(static_cast<std::size_t>(T.order()));
    for (Elem x = 0; x < T.order(); ++x)
        out.quotient_map[x] = Q.index_of(drop(rep(x)));
    out.section.resize(static_cast<std::size_t>(Q.order()));
    for (Elem q = 0; q < Q.order(); ++q) {
        Exponents e = Q.exponents(q);
        e.insert(e.begin() + static_cast<long>(d), 0);
        out.section[q] = T.index_of(e);
    }
    out.cocycle = cochain_from(out.quotient, 2, [&](const Elem* a) {
        Elem c = T.multiply(T.multiply(out.section[a[0]], out.section[a[1]]),
            T.inverse(out.section[Q.multiply(a[0], a[1])]));
        return fp_mul(T.exponent_at(c, d), lambda_inv, p);
    });
    return out;
}

CentralExtension cocycle_to_extension(const Cochain& z, GroupOptions opts) {
    if (z.degree() != 2)
        throw cochain_error("central extensions come from 2-cocycles");
    if (!check_closed(z).closed)
        throw precondition_error("cochain is not a cocycle");
    GroupPtr g = z.group();
    const auto& G = *g;
    const std::size_t n = G.n_gens();
    const residue_t p = G.prime();

    GroupModel m;
    m.prime = p;
    m.identity = Exponents(n + 1, 0);
    for (std::size_t i = 0; i <= n; ++i) {
        Exponents e(n + 1, 0);
        e[i] = 1;
        m.pcgs.push_back(e);
        m.names.push_back(i < n ? G.presentation().name(i) : "z");
    }
    m.mul = [&G, n, p, &z](const Exponents& a, const Exponents& b) {
        Exponents ga(a.begin(), a.begin() + static_cast<long>(n));
        Exponents gb(b.begin(), b.begin() + static_cast<long>(n));
        Elem x = G.index_of(ga), y = G.index_of(gb);
        Exponents out = G.exponents(G.multiply(x, y));
        residue_t zz = z({x, y});
        out.push_back(fp_add(fp_add(a[n], b[n], p), zz, p));
        return out;
    };
    ModelGroup mg = group_from_model(m, opts, G.label().empty() ? "" : G.label() + "~z");

    CentralExtension out;
    out.total = mg.group;
    out.kernel_generator = 1;
    out.kernel = subgroup_generated(out.total, {1});
    out.quotient_map.resize(static_cast<std::size_t>(out.total->order()));
    for (Elem x = 0; x < out.total->order(); ++x)
        out.quotient_map[x] = x / p;
    out.section.resize(static_cast<std::size_t>(G.order()));
    for (Elem q = 0; q < G.order(); ++q)
        out.section[q] = q * p;
    return out;
}

} // namespace cohomoforge

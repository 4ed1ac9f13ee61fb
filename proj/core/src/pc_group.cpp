#include "cohomoforge/pc_group.hpp"

#include <sstream>

namespace cohomoforge {

PcPresentation::PcPresentation(residue_t p, std::size_t n)
    : prime(p), n_gens(n), power_tails(n, Exponents(n, 0)) {}

void PcPresentation::set_power(std::size_t i, Exponents word) {
    if (i >= n_gens || word.size() != n_gens)
        throw presentation_error("power relation for g" + std::to_string(i + 1) + " has the wrong shape");
    power_tails[i] = std::move(word);
}

void PcPresentation::set_commutator(std::size_t i, std::size_t j, Exponents word) {
    if (i >= n_gens || j >= i || word.size() != n_gens)
        throw presentation_error("commutator relation [g" + std::to_string(i + 1) + ",g" + std::to_string(j + 1)
            + "] must have i > j and a full-length word");
    bool trivial = true;
    for (auto e : word)
        trivial = trivial && e == 0;
    if (trivial)
        commutator_tails.erase({i, j});
    else
        commutator_tails[{i, j}] = std::move(word);
}

Exponents PcPresentation::commutator(std::size_t i, std::size_t j) const {
    auto it = commutator_tails.find({i, j});
    return it == commutator_tails.end() ? Exponents(n_gens, 0) : it->second;
}

Exponents PcPresentation::unit(std::size_t i, residue_t e) const {
    Exponents w(n_gens, 0);
    w[i] = e % prime;
    return w;
}

std::string PcPresentation::name(std::size_t i) const {
    if (i < names.size() && !names[i].empty())
        return names[i];
    return "g" + std::to_string(i + 1);
}

namespace {

void check_word(const PcPresentation& pcp, const Exponents& w, std::size_t above, const std::string& what) {
    for (std::size_t k = 0; k < pcp.n_gens; ++k) {
        if (w[k] >= pcp.prime)
            throw presentation_error(what + ": exponent out of range");
        if (w[k] != 0 && k <= above)
            throw presentation_error(what + ": tail involves " + pcp.name(k)
                + ", but only generators after " + pcp.name(above) + " are allowed");
    }
}

std::uint64_t validate(const PcPresentation& pcp) {
    if (!is_prime(pcp.prime) || pcp.prime >= (1u << 16))
        throw presentation_error("modulus " + std::to_string(pcp.prime) + " is not a prime below 2^16");
    if (pcp.n_gens > max_pc_gens)
        throw presentation_error("too many pc generators");
    if (pcp.power_tails.size() != pcp.n_gens)
        throw presentation_error("power relation list has the wrong length");
    std::uint64_t order = 1;
    for (std::size_t i = 0; i < pcp.n_gens; ++i) {
        order *= pcp.prime;
        if (order > 0xffffffffull)
            throw presentation_error("group order exceeds the 32-bit element index range");
    }
    for (std::size_t i = 0; i < pcp.n_gens; ++i)
        check_word(pcp, pcp.power_tails[i], i, pcp.name(i) + "^p");
    for (const auto& [key, w] : pcp.commutator_tails) {
        auto [i, j] = key;
        if (i <= j || i >= pcp.n_gens)
            throw presentation_error("commutator key must satisfy i > j");
        check_word(pcp, w, i, "[" + pcp.name(i) + "," + pcp.name(j) + "]");
    }
    return order;
}

} // namespace

void FiniteGroup::init_rules() {
    const std::size_t n = pcp_.n_gens;
    radix_.assign(n, 1);
    for (std::size_t i = n; i-- > 1;)
        radix_[i - 1] = radix_[i] * pcp_.prime;
    power_words_.resize(n);
    comm_words_.assign(n, std::vector<Word>(n));
    trivial_conj_.assign(n, true);
    for (std::size_t i = 0; i < n; ++i)
        power_words_[i] = to_word(pcp_.power_tails[i]);
    for (const auto& [key, w] : pcp_.commutator_tails) {
        comm_words_[key.first][key.second] = to_word(w);
        trivial_conj_[key.second] = false;
    }
}

std::vector<OverlapCheck> overlap_words(const PcPresentation& pcp) {
    validate(pcp);
    FiniteGroup g;
    g.pcp_ = pcp;
    g.init_rules();
    return g.overlaps();
}

GroupPtr make_group(PcPresentation pcp, GroupOptions opts, std::string label) {
    const std::uint64_t order = validate(pcp);

    std::shared_ptr<FiniteGroup> g(new FiniteGroup());
    g->label_ = std::move(label);
    g->order_ = order;
    g->pcp_ = std::move(pcp);
    g->init_rules();
    const std::size_t n = g->pcp_.n_gens;

    for (const auto& ov : g->overlaps())
        if (ov.lhs != ov.rhs)
            throw consistency_failure("inconsistent presentation: overlap " + ov.name + " collects to different words");

    const std::size_t ord = static_cast<std::size_t>(order);
    g->right_.resize(ord * n);
    for (std::size_t x = 0; x < ord; ++x) {
        FiniteGroup::Word base{};
        std::size_t rem = x;
        for (std::size_t i = 0; i < n; ++i) {
            base[i] = static_cast<std::uint16_t>(rem / g->radix_[i]);
            rem %= g->radix_[i];
        }
        for (std::size_t k = 0; k < n; ++k) {
            FiniteGroup::Word w = base;
            g->mul_gen(w, k);
            g->right_[x * n + k] = g->word_index(w);
        }
    }
    if (ord <= (1u << 22)) {
        g->inverse_.resize(ord);
        for (std::size_t x = 0; x < ord; ++x) {
            Elem cur = static_cast<Elem>(x), h = 0;
            for (std::size_t i = 0; i < n; ++i) {
                residue_t e = g->exponent_at(cur, i);
                if (!e)
                    continue;
                for (residue_t c = e; c < g->prime(); ++c) {
                    cur = g->right_gen(cur, i);
                    h = g->right_gen(h, i);
                }
            }
            g->inverse_[x] = h;
        }
    }
    if (ord <= opts.cache_ceiling) {
        g->table_.resize(ord * ord);
        for (std::size_t x = 0; x < ord; ++x) {
            Elem* row = g->table_.data() + x * ord;
            row[0] = static_cast<Elem>(x);
            for (std::size_t y = 1; y < ord; ++y) {
                std::size_t k = n - 1;
                while (g->exponent_at(static_cast<Elem>(y), k) == 0)
                    --k;
                row[y] = g->right_gen(row[y - g->radix_[k]], k);
            }
        }
    }
    return g;
}

FiniteGroup::Word FiniteGroup::to_word(const Exponents& e) const {
    Word w{};
    for (std::size_t i = 0; i < pcp_.n_gens; ++i)
        w[i] = static_cast<std::uint16_t>(e[i] % pcp_.prime);
    return w;
}

Exponents FiniteGroup::from_word(const Word& w) const {
    Exponents e(pcp_.n_gens);
    for (std::size_t i = 0; i < pcp_.n_gens; ++i)
        e[i] = w[i];
    return e;
}

Elem FiniteGroup::word_index(const Word& w) const {
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < pcp_.n_gens; ++i)
        idx += w[i] * radix_[i];
    return static_cast<Elem>(idx);
}

// u <- u * g_j, collecting from the left: u = prefix * suffix with the suffix
// in generators after j; suffix^{g_j} is rebuilt letter by letter using
// g_i^{g_j} = g_i [g_i, g_j].
void FiniteGroup::mul_gen(Word& u, std::size_t j) const {
    const std::size_t n = pcp_.n_gens;
    const std::uint16_t p = static_cast<std::uint16_t>(pcp_.prime);
    if (trivial_conj_[j] && u[j] + 1 < p) {
        ++u[j];
        return;
    }
    Word suffix{};
    for (std::size_t i = j + 1; i < n; ++i) {
        suffix[i] = u[i];
        u[i] = 0;
    }
    Word v{};
    if (++u[j] == p) {
        u[j] = 0;
        v = power_words_[j];
    }
    for (std::size_t i = j + 1; i < n; ++i) {
        for (std::uint16_t e = 0; e < suffix[i]; ++e) {
            mul_gen(v, i);
            mul_word(v, comm_words_[i][j]);
        }
    }
    for (std::size_t i = j + 1; i < n; ++i)
        u[i] = v[i];
}

void FiniteGroup::mul_word(Word& u, const Word& w) const {
    for (std::size_t k = 0; k < pcp_.n_gens; ++k)
        for (std::uint16_t e = 0; e < w[k]; ++e)
            mul_gen(u, k);
}

Exponents FiniteGroup::collect(const Exponents& a, const Exponents& b) const {
    Word u = to_word(a);
    mul_word(u, to_word(b));
    return from_word(u);
}

std::vector<OverlapCheck> FiniteGroup::overlaps() const {
    const std::size_t n = pcp_.n_gens;
    const std::uint16_t p = static_cast<std::uint16_t>(pcp_.prime);
    auto gen = [&](std::size_t i, std::uint16_t e = 1) {
        Word w{};
        w[i] = e;
        return w;
    };
    auto prod = [&](Word a, const Word& b) {
        mul_word(a, b);
        return a;
    };
    auto nm = [&](std::size_t i) { return pcp_.name(i); };
    std::vector<OverlapCheck> out;
    auto add = [&](std::string name, const Word& l, const Word& r) {
        out.push_back({std::move(name), from_word(l), from_word(r)});
    };

    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t i = 0; i < j; ++i)
                add("(" + nm(k) + " " + nm(j) + ") " + nm(i), prod(prod(gen(k), gen(j)), gen(i)),
                    prod(gen(k), prod(gen(j), gen(i))));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < j; ++i) {
            add("(" + nm(j) + "^p) " + nm(i), prod(power_words_[j], gen(i)),
                prod(gen(j, static_cast<std::uint16_t>(p - 1)), prod(gen(j), gen(i))));
            add(nm(j) + " (" + nm(i) + "^p)", prod(gen(j), power_words_[i]),
                prod(prod(gen(j), gen(i)), gen(i, static_cast<std::uint16_t>(p - 1))));
        }
    for (std::size_t i = 0; i < n; ++i)
        add("(" + nm(i) + "^p) " + nm(i), prod(power_words_[i], gen(i)), prod(gen(i), power_words_[i]));
    return out;
}

Elem FiniteGroup::generator(std::size_t i) const {
    return static_cast<Elem>(radix_.at(i));
}

Elem FiniteGroup::multiply(Elem a, Elem b) const {
    if (!table_.empty())
        return table_[static_cast<std::size_t>(a) * order_ + b];
    const std::size_t n = pcp_.n_gens;
    Elem x = a;
    std::uint64_t rem = b;
    for (std::size_t k = 0; k < n; ++k) {
        std::uint64_t e = rem / radix_[k];
        rem %= radix_[k];
        for (; e > 0; --e)
            x = right_[static_cast<std::size_t>(x) * n + k];
    }
    return x;
}

Elem FiniteGroup::inverse(Elem a) const {
    if (!inverse_.empty())
        return inverse_[a];
    Elem cur = a, h = 0;
    for (std::size_t i = 0; i < pcp_.n_gens; ++i) {
        residue_t e = exponent_at(cur, i);
        if (!e)
            continue;
        for (residue_t c = e; c < prime(); ++c) {
            cur = right_gen(cur, i);
            h = right_gen(h, i);
        }
    }
    return h;
}

Elem FiniteGroup::power(Elem a, std::uint64_t e) const {
    Elem acc = 0, base = a;
    while (e) {
        if (e & 1)
            acc = multiply(acc, base);
        base = multiply(base, base);
        e >>= 1;
    }
    return acc;
}

Elem FiniteGroup::commutator(Elem a, Elem b) const {
    return multiply(multiply(inverse(a), inverse(b)), multiply(a, b));
}

Elem FiniteGroup::conjugate(Elem a, Elem by) const {
    return multiply(multiply(inverse(by), a), by);
}

Exponents FiniteGroup::exponents(Elem a) const {
    Exponents e(pcp_.n_gens);
    std::uint64_t rem = a;
    for (std::size_t i = 0; i < pcp_.n_gens; ++i) {
        e[i] = static_cast<residue_t>(rem / radix_[i]);
        rem %= radix_[i];
    }
    return e;
}

residue_t FiniteGroup::exponent_at(Elem a, std::size_t i) const {
    return static_cast<residue_t>((a / radix_[i]) % pcp_.prime);
}

Elem FiniteGroup::index_of(const Exponents& e) const {
    if (e.size() != pcp_.n_gens)
        throw presentation_error("exponent vector has the wrong length");
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < pcp_.n_gens; ++i)
        idx += (e[i] % pcp_.prime) * radix_[i];
    return static_cast<Elem>(idx);
}

std::string FiniteGroup::format(Elem a) const {
    if (a == 0)
        return "1";
    std::ostringstream os;
    bool first = true;
    Exponents e = exponents(a);
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (!e[i])
            continue;
        if (!first)
            os << '*';
        first = false;
        os << pcp_.name(i);
        if (e[i] != 1)
            os << '^' << e[i];
    }
    return os.str();
}

} // namespace cohomoforge

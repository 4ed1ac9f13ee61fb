// Reference values from brute force on explicit multiplication tables.
// Shares no code with the library: groups are built from concrete models,
// and cohomology comes from dense normalized bar complexes.
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <set>
#include <vector>

namespace {

using nlohmann::json;

struct Table {
    int p = 0;
    int n = 0;
    std::vector<int> mul; // n x n, only for small n
    std::function<int(int, int)> law;
    std::vector<int> inv;
    std::vector<int> gens;

    [[nodiscard]] int operator()(int a, int b) const {
        return mul.empty() ? law(a, b) : mul[static_cast<std::size_t>(a) * n + b];
    }
    [[nodiscard]] int comm(int a, int b) const { return (*this)((*this)(inv[a], inv[b]), (*this)(a, b)); }
};

Table from_law(int p, int n, const std::function<int(int, int)>& law, std::vector<int> gens) {
    Table t;
    t.p = p;
    t.n = n;
    t.law = law;
    if (n <= 3125) {
        t.mul.resize(static_cast<std::size_t>(n) * n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                t.mul[static_cast<std::size_t>(a) * n + b] = law(a, b);
    }
    // inverses by powering: x^(p^k) = 1 for a p-group
    t.inv.assign(n, -1);
    for (int a = 0; a < n; ++a) {
        int prev = 0, y = a;
        while (y != 0) {
            prev = y;
            y = t(y, a);
        }
        t.inv[a] = a == 0 ? 0 : prev;
    }
    t.gens = std::move(gens);
    return t;
}

int ipow(int b, int e) {
    int r = 1;
    while (e-- > 0)
        r *= b;
    return r;
}

// (Z/p)^k with componentwise addition, element = base-p digits
Table elementary(int p, int k) {
    const int n = ipow(p, k);
    std::vector<int> gens;
    for (int i = 0; i < k; ++i)
        gens.push_back(ipow(p, i));
    return from_law(p, n, [p, k](int a, int b) {
        int out = 0, w = 1;
        for (int i = 0; i < k; ++i, a /= p, b /= p, w *= p)
            out += ((a % p + b % p) % p) * w;
        return out;
    }, gens);
}

// s^k v with v in F_p^r and s^-1 v s = v M, M: e_j -> e_j + e_{j+1};
// (s^k v)(s^l w) = s^(k+l) (v M^l + w)
struct Semidirect {
    int p, r;
    [[nodiscard]] std::vector<int> shift(std::vector<int> v, int l) const {
        for (int t = 0; t < l; ++t)
            for (int j = r - 1; j >= 1; --j)
                v[j] = (v[j] + v[j - 1]) % p;
        return v;
    }
    [[nodiscard]] int encode(int k, const std::vector<int>& v) const {
        int idx = k;
        for (int j = 0; j < r; ++j)
            idx = idx * p + v[j];
        return idx;
    }
    void decode(int idx, int& k, std::vector<int>& v) const {
        v.assign(r, 0);
        for (int j = r - 1; j >= 0; --j, idx /= p)
            v[j] = idx % p;
        k = idx;
    }
};

Table family_group(int p, int r) {
    Semidirect sd{p, r};
    const int q = ipow(p, r);
    const int n = q * p;
    std::vector<int> gens;
    std::vector<int> zero(r, 0);
    gens.push_back(sd.encode(1, zero));
    for (int j = 0; j < r; ++j) {
        std::vector<int> e(r, 0);
        e[j] = 1;
        gens.push_back(sd.encode(0, e));
    }
    // shifted[l * q + v] = index of v M^l
    auto shifted = std::make_shared<std::vector<int>>(static_cast<std::size_t>(p) * q);
    std::vector<int> v;
    int k;
    for (int l = 0; l < p; ++l)
        for (int x = 0; x < q; ++x) {
            sd.decode(x, k, v);
            (*shifted)[static_cast<std::size_t>(l) * q + x] = sd.encode(0, sd.shift(v, l));
        }
    return from_law(p, n, [shifted, p, q](int a, int b) {
        const int k = a / q, l = b / q;
        int v = (*shifted)[static_cast<std::size_t>(l) * q + a % q], w = b % q;
        int sum = 0;
        for (int weight = 1; weight < q; weight *= p, v /= p, w /= p)
            sum += ((v % p + w % p) % p) * weight;
        return ((k + l) % p) * q + sum;
    }, gens);
}

using Set = std::vector<int>; // sorted element list

Set closure(const Table& g, const std::vector<int>& gens) {
    std::vector<char> in(g.n, 0);
    std::vector<int> todo{0};
    in[0] = 1;
    for (std::size_t i = 0; i < todo.size(); ++i)
        for (int s : gens) {
            int y = g(todo[i], s);
            if (!in[y]) {
                in[y] = 1;
                todo.push_back(y);
            }
        }
    std::sort(todo.begin(), todo.end());
    return todo;
}

int log_p(int n, int p) {
    int k = 0;
    while (n > 1) {
        n /= p;
        ++k;
    }
    return k;
}

int exponent(const Table& g) {
    int e = 1;
    for (int x = 0; x < g.n; ++x) {
        int y = x, o = 1;
        while (y != 0) {
            y = g(y, x);
            ++o;
        }
        e = std::max(e, o);
    }
    return e;
}

Set center(const Table& g) {
    Set z;
    for (int x = 0; x < g.n; ++x) {
        bool c = true;
        for (int s : g.gens)
            c = c && g(x, s) == g(s, x);
        if (c)
            z.push_back(x);
    }
    return z;
}

Set centralizer(const Table& g, const Set& s) {
    Set c;
    for (int x = 0; x < g.n; ++x) {
        bool ok = true;
        for (int y : s)
            if (g(x, y) != g(y, x)) {
                ok = false;
                break;
            }
        if (ok)
            c.push_back(x);
    }
    return c;
}

bool elementary_abelian(const Table& g, const Set& s) {
    for (int x : s) {
        int y = 0;
        for (int i = 0; i < g.p; ++i)
            y = g(y, x);
        if (y != 0)
            return false;
        for (int z : s)
            if (g(x, z) != g(z, x))
                return false;
    }
    return true;
}

// normal closure of <gens>, generators grown one conjugate at a time
Set normal_closure_of(const Table& g, std::vector<int>& gens) {
    Set s = closure(g, gens);
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (int h : g.gens) {
            int c = g(g(g.inv[h], gens[i]), h);
            if (!std::binary_search(s.begin(), s.end(), c)) {
                gens.push_back(c);
                s = closure(g, gens);
            }
        }
    return s;
}

std::vector<int> gamma_indices(const Table& g) {
    std::vector<int> idx;
    std::vector<int> gens = g.gens;
    std::size_t size = static_cast<std::size_t>(g.n);
    while (size > 1) {
        std::vector<int> next_gens;
        for (int x : gens)
            for (int h : g.gens)
                next_gens.push_back(g.comm(x, h));
        Set next = normal_closure_of(g, next_gens);
        if (next.size() == size)
            break;
        idx.push_back(static_cast<int>(size / next.size()));
        size = next.size();
        gens = std::move(next_gens);
    }
    return idx;
}

// all elementary abelian subgroups, grouped by rank
std::vector<std::set<Set>> elementary_abelian_subgroups(const Table& g) {
    std::vector<std::set<Set>> by_rank(1);
    by_rank[0].insert(Set{0});
    for (std::size_t rank = 0;; ++rank) {
        std::set<Set> next;
        for (const Set& e : by_rank[rank])
            for (int x = 1; x < g.n; ++x) {
                if (std::binary_search(e.begin(), e.end(), x))
                    continue;
                std::vector<int> gens = e;
                gens.push_back(x);
                Set c = closure(g, gens);
                if (static_cast<int>(c.size()) == static_cast<int>(e.size()) * g.p && elementary_abelian(g, c))
                    next.insert(c);
            }
        if (next.empty())
            break;
        by_rank.push_back(std::move(next));
    }
    return by_rank;
}

struct Bounds {
    int notbohm = 0;
    int p_rank = 0;
    std::size_t rank2_centralizers = 0;
};

Bounds bounds(const Table& g) {
    auto ea = elementary_abelian_subgroups(g);
    Bounds b;
    b.p_rank = static_cast<int>(ea.size()) - 1;
    b.notbohm = b.p_rank;
    auto prank_of = [&](const Set& c) {
        int best = 0;
        for (std::size_t s = 1; s < ea.size(); ++s)
            for (const Set& e : ea[s])
                if (std::includes(c.begin(), c.end(), e.begin(), e.end()))
                    best = std::max(best, static_cast<int>(s));
        return best;
    };
    std::set<Set> cents2;
    for (std::size_t s = 1; s < ea.size(); ++s)
        for (const Set& e : ea[s]) {
            Set c = centralizer(g, e);
            int bound = elementary_abelian(g, c) ? log_p(static_cast<int>(c.size()), g.p) : prank_of(c);
            b.notbohm = std::min(b.notbohm, bound);
            if (s == 2)
                cents2.insert(c);
        }
    b.rank2_centralizers = cents2.size();
    return b;
}

// ---- dense linear algebra mod p ----

struct Reducer {
    int p;
    std::size_t cols;
    std::vector<std::vector<int>> rows; // reduced, pivot = first nonzero
    std::vector<std::size_t> pivots;
    std::vector<int> pivot_row_of;

    Reducer(int p_, std::size_t c) : p(p_), cols(c), pivot_row_of(c, -1) {}

    static int inverse(int a, int p) {
        for (int x = 1; x < p; ++x)
            if (a * x % p == 1)
                return x;
        return 0;
    }

    // returns true if the row was independent
    bool insert(std::vector<int> v) {
        for (std::size_t c = 0; c < cols; ++c) {
            if (v[c] == 0)
                continue;
            int pr = pivot_row_of[c];
            if (pr < 0) {
                int iv = inverse(v[c], p);
                for (std::size_t k = c; k < cols; ++k)
                    v[k] = v[k] * iv % p;
                pivot_row_of[c] = static_cast<int>(rows.size());
                rows.push_back(std::move(v));
                return true;
            }
            const auto& r = rows[pr];
            int f = v[c];
            for (std::size_t k = c; k < cols; ++k)
                v[k] = ((v[k] - f * r[k]) % p + p) % p;
        }
        return false;
    }
    [[nodiscard]] std::size_t rank() const { return rows.size(); }
};

// normalized n-tuples over non-identity elements, index in base (n_elems-1)
struct Bar {
    const Table& g;
    int m; // |G| - 1

    explicit Bar(const Table& t) : g(t), m(t.n - 1) {}

    [[nodiscard]] std::size_t count(int deg) const {
        std::size_t c = 1;
        for (int i = 0; i < deg; ++i)
            c *= static_cast<std::size_t>(m);
        return c;
    }
    void tuple(std::size_t idx, int deg, std::vector<int>& t) const {
        t.assign(deg, 0);
        for (int i = deg - 1; i >= 0; --i) {
            t[i] = static_cast<int>(idx % m) + 1;
            idx /= m;
        }
    }
    // -1 for a degenerate tuple
    [[nodiscard]] long index(const std::vector<int>& t) const {
        long idx = 0;
        for (int x : t) {
            if (x == 0)
                return -1;
            idx = idx * m + (x - 1);
        }
        return idx;
    }

    // row of d^deg (from C^deg to C^{deg+1}) at a (deg+1)-tuple, over columns of C^deg
    [[nodiscard]] std::vector<int> d_row(const std::vector<int>& t, int deg) const {
        std::vector<int> row(count(deg), 0);
        const int p = g.p;
        auto add = [&](const std::vector<int>& u, int sign) {
            long i = index(u);
            if (i >= 0)
                row[i] = ((row[i] + sign) % p + p) % p;
        };
        std::vector<int> u(t.begin() + 1, t.end());
        add(u, 1);
        for (int i = 0; i < deg; ++i) {
            std::vector<int> w;
            for (int j = 0; j < deg + 1; ++j) {
                if (j == i) {
                    w.push_back(g(t[i], t[i + 1]));
                    ++j;
                } else {
                    w.push_back(t[j]);
                }
            }
            add(w, (i + 1) % 2 ? -1 : 1);
        }
        std::vector<int> last(t.begin(), t.end() - 1);
        add(last, (deg + 1) % 2 ? -1 : 1);
        return row;
    }

    [[nodiscard]] std::size_t rank_d(int deg) const {
        if (deg < 1)
            return 0; // trivial coefficients: d^0 = 0
        Reducer red(g.p, count(deg));
        std::vector<int> t;
        for (std::size_t i = 0; i < count(deg + 1); ++i) {
            tuple(i, deg + 1, t);
            red.insert(d_row(t, deg));
            if (red.rank() == count(deg))
                break;
        }
        return red.rank();
    }

    [[nodiscard]] std::size_t h_dim(int deg) const {
        const std::size_t ker = count(deg) - rank_d(deg);
        const std::size_t im = deg >= 1 ? rank_d(deg - 1) : 0;
        return ker - im;
    }

    // is z (values on deg-tuples) in the image of d^{deg-1}?
    [[nodiscard]] bool is_coboundary(const std::vector<int>& z, int deg) const {
        // columns: C^{deg-1} unknowns + rhs; z in image iff rank does not grow
        const std::size_t nu = count(deg - 1);
        Reducer with(g.p, nu + 1), without(g.p, nu);
        std::vector<int> t;
        for (std::size_t i = 0; i < count(deg); ++i) {
            tuple(i, deg, t);
            auto row = d_row(t, deg - 1);
            without.insert(row);
            row.push_back(z[i]);
            with.insert(std::move(row));
        }
        return with.rank() == without.rank();
    }
};

json family_entry(int p, int r, bool structure) {
    Table g = family_group(p, r);
    json j = {{"p", p}, {"r", r}, {"order", g.n}, {"exponent", exponent(g)}};
    Set z = center(g);
    j["center_rank"] = elementary_abelian(g, z) ? log_p(static_cast<int>(z.size()), p) : -1;
    j["center_order"] = z.size();
    if (structure)
        j["gamma_indices"] = gamma_indices(g);
    return j;
}

} // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: oracle OUT.json\n";
        return 64;
    }
    json out;

    json fam = json::array();
    for (auto [p, r] : std::vector<std::pair<int, int>>{{5, 2}, {5, 3}, {7, 2}, {7, 3}, {7, 4}, {7, 5}})
        fam.push_back(family_entry(p, r, true));
    out["family"] = fam;

    {
        Table g2 = family_group(5, 2), g3 = family_group(5, 3), e3 = elementary(5, 3), e2 = elementary(5, 2);
        Bounds b2 = bounds(g2), b3 = bounds(g3), be = bounds(e3), be2 = bounds(e2);
        out["bounds"] = {
            {"G_2", {{"duflot", 1}, {"notbohm", b2.notbohm}, {"p_rank", b2.p_rank},
                        {"rank2_centralizers", b2.rank2_centralizers}}},
            {"G_3", {{"notbohm", b3.notbohm}, {"p_rank", b3.p_rank}, {"rank2_centralizers", b3.rank2_centralizers}}},
            {"C5^3", {{"notbohm", be.notbohm}, {"p_rank", be.p_rank}}},
            {"C5^2", {{"duflot", log_p(static_cast<int>(center(e2).size()), 5)}, {"notbohm", be2.notbohm}}}};
        Set zc = center(g3);
        out["bounds"]["G_3"]["duflot"] = log_p(static_cast<int>(zc.size()), 5);
    }

    {
        Table c5 = elementary(5, 1);
        Bar bar(c5);
        json dims = json::array();
        for (int k = 0; k <= 3; ++k)
            dims.push_back(bar.h_dim(k));
        out["cohomology"]["C5"] = dims;
        out["linalg"]["C5_rank_d0"] = bar.rank_d(0);
        out["linalg"]["C5_ker_d1"] = bar.count(1) - bar.rank_d(1);
    }
    {
        Table c55 = elementary(5, 2);
        Bar bar(c55);
        json dims = json::array();
        for (int k = 0; k <= 2; ++k)
            dims.push_back(bar.h_dim(k));
        // degree 3 by Kunneth over F_p from the C5 dimensions
        std::vector<int> c5 = out["cohomology"]["C5"].get<std::vector<int>>();
        int d3 = 0;
        for (int i = 0; i <= 3; ++i)
            d3 += c5[i] * c5[3 - i];
        dims.push_back(d3);
        out["cohomology"]["C5xC5"] = dims;
        out["cohomology"]["C5xC5_degree3_method"] = "kunneth";

        // z((a1,b1),(a2,b2)) = b1 a2 with a the low digit
        std::vector<int> z(bar.count(2));
        std::vector<int> t;
        for (std::size_t i = 0; i < z.size(); ++i) {
            bar.tuple(i, 2, t);
            z[i] = (t[0] / 5) * (t[1] % 5) % 5;
        }
        out["extraspecial"]["is_coboundary"] = bar.is_coboundary(z, 2);

        // the extension: pairs (g, c) with (g,c)(h,d) = (gh, c+d+z(g,h))
        auto zf = [](int g, int h) { return (g / 5) * (h % 5) % 5; };
        Table ext = from_law(5, 125, [&](int x, int y) {
            int g = x / 5, c = x % 5, h = y / 5, d = y % 5;
            return c55(g, h) * 5 + (c + d + zf(g, h)) % 5;
        }, {5, 25, 1});
        // a complement is a subgroup of order 25 meeting the kernel {0..4} trivially
        bool complement = false;
        for (int c1 = 0; c1 < 5 && !complement; ++c1)
            for (int c2 = 0; c2 < 5 && !complement; ++c2) {
                Set s = closure(ext, {1 * 5 + c1, 5 * 5 + c2});
                bool meets = false;
                for (int x : s)
                    meets = meets || (x != 0 && x < 5);
                complement = s.size() == 25 && !meets;
            }
        out["extraspecial"]["has_complement"] = complement;
        out["extraspecial"]["extension_order"] = ext.n;
        out["extraspecial"]["extension_exponent"] = exponent(ext);
        out["extraspecial"]["extension_center_order"] = center(ext).size();
    }

    std::ofstream f(argv[1]);
    if (!f) {
        std::cerr << "cannot write " << argv[1] << "\n";
        return 1;
    }
    f << out.dump(2) << "\n";
    return 0;
}

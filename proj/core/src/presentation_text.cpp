#include "cohomoforge/pc_group.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace cohomoforge {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct Parser {
    residue_t prime = 0;
    std::vector<std::string> names;
    std::size_t line_no = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw presentation_error("line " + std::to_string(line_no) + ": " + msg);
    }

    std::size_t gen_index(const std::string& tok) const {
        auto it = std::find(names.begin(), names.end(), tok);
        if (it == names.end())
            fail("unknown generator '" + tok + "'");
        return static_cast<std::size_t>(it - names.begin());
    }

    residue_t parse_exponent(const std::string& tok) const {
        if (tok == "p")
            return prime;
        if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](unsigned char c) { return std::isdigit(c); }))
            fail("bad exponent '" + tok + "'");
        return static_cast<residue_t>(std::stoul(tok));
    }

    Exponents parse_word(const std::string& text) const {
        Exponents w(names.size(), 0);
        std::string t = trim(text);
        if (t == "1")
            return w;
        std::stringstream ss(t);
        std::string factor;
        std::size_t last = 0;
        bool any = false;
        while (std::getline(ss, factor, '*')) {
            factor = trim(factor);
            auto caret = factor.find('^');
            std::string g = trim(factor.substr(0, caret));
            residue_t e = caret == std::string::npos ? 1 : parse_exponent(trim(factor.substr(caret + 1)));
            std::size_t i = gen_index(g);
            if (any && i <= last)
                fail("word '" + t + "' is not in normal form (generators must appear in increasing order)");
            if (e == 0 || e >= prime)
                fail("exponent of " + g + " must lie in 1.." + std::to_string(prime - 1));
            w[i] = e;
            last = i;
            any = true;
        }
        if (!any)
            fail("empty word");
        return w;
    }
};

} // namespace

PcPresentation parse_presentation(const std::string& text) {
    Parser ps;
    std::vector<std::pair<std::size_t, std::string>> relations;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        ++ps.line_no;
        line = trim(line.substr(0, line.find('#')));
        if (line.empty())
            continue;
        std::istringstream ls(line);
        std::string head;
        ls >> head;
        if (head == "prime") {
            unsigned long v = 0;
            if (!(ls >> v) || !is_prime(static_cast<residue_t>(v)))
                ps.fail("'prime' needs a prime number");
            ps.prime = static_cast<residue_t>(v);
        } else if (head == "generators") {
            std::vector<std::string> toks;
            std::string t;
            while (ls >> t)
                toks.push_back(t);
            if (toks.size() == 1 && std::all_of(toks[0].begin(), toks[0].end(), [](unsigned char c) { return std::isdigit(c); })) {
                std::size_t n = std::stoul(toks[0]);
                toks.clear();
                for (std::size_t i = 0; i < n; ++i)
                    toks.push_back("g" + std::to_string(i + 1));
            }
            if (toks.empty() || toks.size() > max_pc_gens)
                ps.fail("generator count must lie in 1.." + std::to_string(max_pc_gens));
            ps.names = toks;
        } else {
            relations.emplace_back(ps.line_no, line);
        }
    }
    if (ps.prime == 0)
        throw presentation_error("missing 'prime' line");
    if (ps.names.empty())
        throw presentation_error("missing 'generators' line");

    PcPresentation pcp(ps.prime, ps.names.size());
    pcp.names = ps.names;
    for (const auto& [no, rel] : relations) {
        ps.line_no = no;
        auto eq = rel.find('=');
        if (eq == std::string::npos)
            ps.fail("relation needs '='");
        std::string lhs = trim(rel.substr(0, eq));
        Exponents rhs = ps.parse_word(rel.substr(eq + 1));
        if (!lhs.empty() && lhs.front() == '[') {
            auto comma = lhs.find(',');
            if (comma == std::string::npos || lhs.back() != ']')
                ps.fail("commutator must look like [gi,gj]");
            std::size_t i = ps.gen_index(trim(lhs.substr(1, comma - 1)));
            std::size_t j = ps.gen_index(trim(lhs.substr(comma + 1, lhs.size() - comma - 2)));
            if (i <= j)
                ps.fail("commutator [" + pcp.name(i) + "," + pcp.name(j) + "] must have the later generator first");
            pcp.set_commutator(i, j, rhs);
            continue;
        }
        auto caret = lhs.find('^');
        if (caret == std::string::npos)
            ps.fail("unrecognised relation '" + rel + "'");
        std::size_t i = ps.gen_index(trim(lhs.substr(0, caret)));
        std::string rest = trim(lhs.substr(caret + 1));
        bool is_power = rest == "p" || std::all_of(rest.begin(), rest.end(), [](unsigned char c) { return std::isdigit(c); });
        if (is_power) {
            if (ps.parse_exponent(rest) != ps.prime)
                ps.fail("power relations must use the exponent p");
            pcp.set_power(i, rhs);
            continue;
        }
        // conjugate relation gi^gj = gi * tail
        std::size_t j = ps.gen_index(rest);
        if (i <= j)
            ps.fail("conjugate relation " + pcp.name(i) + "^" + pcp.name(j) + " must conjugate a later generator");
        if (rhs[i] != 1)
            ps.fail("conjugate of " + pcp.name(i) + " must be " + pcp.name(i) + " times a word in later generators");
        for (std::size_t k = 0; k < i; ++k)
            if (rhs[k] != 0)
                ps.fail("conjugate of " + pcp.name(i) + " involves an earlier generator");
        rhs[i] = 0;
        pcp.set_commutator(i, j, rhs);
    }
    return pcp;
}

namespace {

std::string word_text(const PcPresentation& pcp, const Exponents& w) {
    std::string out;
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (!w[k])
            continue;
        if (!out.empty())
            out += '*';
        out += pcp.name(k);
        if (w[k] != 1)
            out += '^' + std::to_string(w[k]);
    }
    return out.empty() ? "1" : out;
}

} // namespace

std::string format_presentation(const PcPresentation& pcp) {
    std::ostringstream os;
    os << "prime " << pcp.prime << '\n' << "generators";
    for (std::size_t i = 0; i < pcp.n_gens; ++i)
        os << ' ' << pcp.name(i);
    os << '\n';
    for (std::size_t i = 0; i < pcp.n_gens; ++i)
        if (std::any_of(pcp.power_tails[i].begin(), pcp.power_tails[i].end(), [](residue_t e) { return e != 0; }))
            os << pcp.name(i) << "^p = " << word_text(pcp, pcp.power_tails[i]) << '\n';
    for (const auto& [key, w] : pcp.commutator_tails)
        os << '[' << pcp.name(key.first) << ',' << pcp.name(key.second) << "] = " << word_text(pcp, w) << '\n';
    return os.str();
}

} // namespace cohomoforge

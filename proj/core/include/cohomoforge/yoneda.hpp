#pragma once

#include "cohomoforge/cochain.hpp"
#include "cohomoforge/module.hpp"

namespace cohomoforge {

class extension_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ExactnessReport {
    bool exact = true;
    std::string failure;
};

// 0 -> A -> M_n -> ... -> M_1 -> B -> 0 stored as modules {A, M_n, ..., M_1, B}
// with maps[i]: modules[i] -> modules[i+1]
struct YonedaExtension {
    std::vector<GModule> modules;
    std::vector<ModuleMap> maps;

    [[nodiscard]] std::size_t degree() const { return modules.size() - 2; }
    [[nodiscard]] const GModule& kernel() const { return modules.front(); }
    [[nodiscard]] const GModule& cokernel() const { return modules.back(); }
    [[nodiscard]] GroupPtr group() const { return modules.front().group; }
};

[[nodiscard]] ExactnessReport check_exact(const YonedaExtension& e);
// throws extension_error unless exact
[[nodiscard]] YonedaExtension make_yoneda(std::vector<GModule> modules, std::vector<ModuleMap> maps);

// 0 -> A -> A+B -> B -> 0, or A -> A -> 0 -> ... -> 0 -> B -> B for n >= 2
[[nodiscard]] YonedaExtension zero_extension(const GModule& a, const GModule& b, std::size_t n);

// 0 -> F_p -> F_p^2 -> F_p -> 0 with g acting by [[1,0],[f(g),1]]
[[nodiscard]] YonedaExtension extension_from_h1(const Cochain& f);

[[nodiscard]] YonedaExtension pushout(const YonedaExtension& e, const ModuleMap& alpha);
[[nodiscard]] YonedaExtension pullback(const YonedaExtension& e, const ModuleMap& beta);
[[nodiscard]] YonedaExtension direct_sum(const YonedaExtension& x, const YonedaExtension& y);
[[nodiscard]] YonedaExtension baer_sum(const YonedaExtension& x, const YonedaExtension& y);
// phi: 0 -> B -> ... -> A -> 0, psi: 0 -> A -> ... -> C -> 0
[[nodiscard]] YonedaExtension splice(const YonedaExtension& phi, const YonedaExtension& psi);

// class in H^n(G; F_p) of an extension with trivial one-dimensional ends
[[nodiscard]] Cochain yoneda_cocycle(const YonedaExtension& e);

// x and y represent the same class, decided through the cocycle bridge
[[nodiscard]] bool equivalent(const YonedaExtension& x, const YonedaExtension& y);

// Dimension shifting. u has degree k, values in the target of maps_down[0],
// stored flat over all k-tuples of G. Each step applies the coboundary with
// g.m = m g^-1 and lifts through the next map; the last source must be the
// trivial module F_p.
[[nodiscard]] Cochain shift_down(GroupPtr g, std::size_t k, std::vector<residue_t> u,
    const std::vector<ModuleMap>& maps_down);

} // namespace cohomoforge

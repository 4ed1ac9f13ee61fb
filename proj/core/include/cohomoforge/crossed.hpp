#pragma once

#include "cohomoforge/yoneda.hpp"

namespace cohomoforge {

// rho: M2 -> M1 with M1 acting on M2 on the right, act(y2, y1) = y2^y1
struct CrossedModule {
    GroupPtr m2;
    GroupPtr m1;
    std::vector<Elem> rho;
    std::function<Elem(Elem, Elem)> act;
};

struct CrossedModuleReport {
    bool holds = true;
    std::string axiom; // failing condition
    Elem first = 0;
    Elem second = 0;
};

[[nodiscard]] CrossedModuleReport crossed_module_check(const CrossedModule& cm);
// N -> G for a normal subgroup, acting by conjugation
[[nodiscard]] CrossedModule normal_inclusion(const Subgroup& n);

// 0 -> A -> M_n -> ... -> M_2 -> M_1 -> G -> 1.
// modules = {A, M_n, ..., M_2} (just {A} in degree 1), G-modules throughout;
// maps[i]: modules[i] -> modules[i+1]; into_top is the map from the last
// module into M_1 on vector indices. M_1 acts on the last module through G.
// The kernel of M_1 -> G is required to be central.
struct CrossedExtension {
    GroupPtr base;
    GroupPtr top;
    std::vector<Elem> to_base;
    std::vector<GModule> modules;
    std::vector<ModuleMap> maps;
    std::vector<Elem> into_top;

    [[nodiscard]] std::size_t degree() const { return modules.size(); }
    [[nodiscard]] const GModule& kernel() const { return modules.front(); }
    [[nodiscard]] const GModule& bottom() const { return modules.back(); }
};

[[nodiscard]] ExactnessReport check_crossed(const CrossedExtension& e);
[[nodiscard]] CrossedModule crossed_module_of(const CrossedExtension& e);

// a central extension with kernel generated by kernel_generator (A = F_p)
[[nodiscard]] CrossedExtension crossed_from_central(GroupPtr total, Elem kernel_generator,
    std::vector<Elem> quotient_map, GroupPtr base);
[[nodiscard]] CrossedExtension crossed_from_cocycle(const Cochain& z);
// G x A in degree 1, A -> A -> 0 -> ... -> 0 -> G -> G above
[[nodiscard]] CrossedExtension zero_crossed(GroupPtr g, std::size_t n, std::size_t kernel_dim = 1);

[[nodiscard]] CrossedExtension pushout(const CrossedExtension& e, const ModuleMap& alpha);
// along a group homomorphism source -> e.base
[[nodiscard]] CrossedExtension pullback(const CrossedExtension& e, GroupPtr source, const std::vector<Elem>& hom);
[[nodiscard]] CrossedExtension baer_sum(const CrossedExtension& x, const CrossedExtension& y);
// phi: 0 -> B -> N_n -> ... -> N_1 -> A -> 0, psi a crossed extension by A
[[nodiscard]] CrossedExtension splice(const YonedaExtension& phi, const CrossedExtension& psi);

// class in H^{n+1}(G; F_p), for A = F_p
[[nodiscard]] Cochain crossed_cocycle(const CrossedExtension& e);
[[nodiscard]] bool equivalent(const CrossedExtension& x, const CrossedExtension& y);

// the diagram of the equivalence criterion for crossed 2-fold extensions
struct XDiagramWitness {
    GroupPtr x;
    std::vector<Elem> mu1; // M_2 -> X on vector indices
    std::vector<Elem> mu2; // N_2 -> X on vector indices
    std::vector<Elem> nu1; // X -> M_1
    std::vector<Elem> nu2; // X -> N_1
};

struct XCondition {
    std::string name;
    bool holds = false;
    std::string detail;
};

struct XDiagramReport {
    bool holds = false;
    std::vector<XCondition> conditions;
};

// X = M_2 x| M_1 with nu1(y, v) = y rho1(v), nu2 the projection,
// mu1(v) = (1, v) and mu2(n) = (rho1(n), -n)
[[nodiscard]] XDiagramWitness self_equivalence_witness(const CrossedExtension& psi);
[[nodiscard]] XDiagramReport verify_x_diagram(const CrossedExtension& psi, const CrossedExtension& psi_prime,
    const XDiagramWitness& w);

} // namespace cohomoforge

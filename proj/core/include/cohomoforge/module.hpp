#pragma once

#include "cohomoforge/group_ops.hpp"
#include "cohomoforge/fp_matrix.hpp"

namespace cohomoforge {

class module_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Right F_p[G]-module on row vectors: v . g = v * action[g]. One matrix per pc
// generator; other elements act through their normal word.
struct GModule {
    GroupPtr group;
    std::size_t dim = 0;
    std::vector<FpMatrix> action;

    [[nodiscard]] residue_t prime() const { return group->prime(); }
    [[nodiscard]] FpMatrix element_action(Elem x) const;
    [[nodiscard]] FpVector act(const FpVector& v, Elem x) const;
    [[nodiscard]] std::uint64_t size() const; // p^dim
    [[nodiscard]] bool is_trivial() const;
};

// checks invertibility and that g -> action(g) is a homomorphism on all of G
[[nodiscard]] GModule make_module(GroupPtr g, std::vector<FpMatrix> action);
[[nodiscard]] GModule trivial_module(GroupPtr g, std::size_t dim = 1);
[[nodiscard]] GModule zero_module(GroupPtr g);
[[nodiscard]] GModule direct_sum(const GModule& a, const GModule& b);
// the module viewed over source through hom: source -> a.group
[[nodiscard]] GModule restrict_module(const GModule& a, GroupPtr source, const std::vector<Elem>& hom);
[[nodiscard]] bool same_module(const GModule& a, const GModule& b);

// v -> v * matrix, matrix is source.dim x target.dim
struct ModuleMap {
    GModule source;
    GModule target;
    FpMatrix matrix;

    [[nodiscard]] FpVector operator()(const FpVector& v) const { return matrix.left_apply(v); }
};

// throws module_error when matrix does not commute with the actions
[[nodiscard]] ModuleMap make_map(const GModule& source, const GModule& target, FpMatrix matrix);
[[nodiscard]] ModuleMap identity_map(const GModule& m);
[[nodiscard]] ModuleMap zero_map(const GModule& source, const GModule& target);
[[nodiscard]] ModuleMap scalar_map(const GModule& m, residue_t c);
[[nodiscard]] ModuleMap compose(const ModuleMap& first, const ModuleMap& second);
[[nodiscard]] ModuleMap diagonal_map(const GModule& b);   // b -> b + b
[[nodiscard]] ModuleMap codiagonal_map(const GModule& a); // a + a -> a
[[nodiscard]] ModuleMap direct_sum(const ModuleMap& f, const ModuleMap& g);
[[nodiscard]] std::size_t rank(const ModuleMap& f);
[[nodiscard]] bool is_equivariant(const ModuleMap& f);

// submodule spanned by rows (must be invariant); inclusion is sub -> m
struct Submodule {
    GModule module;
    FpMatrix inclusion;
};

struct QuotientModule {
    GModule module;
    FpMatrix projection; // m.dim x quotient dim
    FpMatrix lift;       // quotient dim x m.dim, a linear section
};

[[nodiscard]] Submodule submodule(const GModule& m, const std::vector<FpVector>& rows);
[[nodiscard]] QuotientModule quotient_module(const GModule& m, const std::vector<FpVector>& rows);

// vectors of an F_p space indexed like the elementary abelian pc group
[[nodiscard]] std::uint64_t vector_index(const FpVector& v, residue_t p);
[[nodiscard]] FpVector index_vector(std::uint64_t idx, std::size_t dim, residue_t p);

// basis b_1..b_d with b_i (g - 1) in span(b_{i+1}..b_d) for every g
[[nodiscard]] std::vector<FpVector> stable_flag_basis(const GModule& m);

// the underlying elementary abelian group, element index = vector_index
[[nodiscard]] GroupPtr underlying_group(const GModule& m);

// some x with x * m = target
[[nodiscard]] std::optional<FpVector> preimage(const FpMatrix& m, const FpVector& target);

} // namespace cohomoforge

#include "cohomoforge/crossed.hpp"
#include "cohomoforge/family.hpp"

#include <doctest.h>

using namespace cohomoforge;

namespace {

// c with a = c b in cohomology, or -1
int ratio(const Cochain& a, const Cochain& b) {
    for (residue_t c = 0; c < a.prime(); ++c)
        if (is_coboundary(a - b.scaled(c)).status == CoboundaryStatus::is_coboundary)
            return static_cast<int>(c);
    return -1;
}

GroupPtr c5xc5() {
    return make_group(PcPresentation(5, 2));
}

struct Fixture {
    EtaCertificate eta = construct_eta({5, 2, false});
    GroupPtr g = eta.base;
    Cochain sigma = coordinate_cochain(g, 0);
    CrossedExtension eta_x = crossed_from_cocycle(eta.cocycle);
    CrossedExtension theta_x = splice(extension_from_h1(sigma), eta_x);
    Cochain theta = cup(sigma, eta.cocycle);
};

const Fixture& fixture() {
    static const Fixture f;
    return f;
}

} // namespace

TEST_SUITE("extension") {

TEST_CASE("Yoneda extensions from H^1") {
    GroupPtr g = c5xc5();
    auto h = h1_basis(g);
    YonedaExtension e0 = extension_from_h1(h[0]);
    CHECK(check_exact(e0).exact);
    CHECK(e0.degree() == 1);
    CHECK(ratio(yoneda_cocycle(e0), h[0]) == 4); // bridges to -f
    CHECK(yoneda_cocycle(zero_extension(trivial_module(g), trivial_module(g), 1)).is_zero());
}

TEST_CASE("Baer sum laws") {
    GroupPtr g = c5xc5();
    auto h = h1_basis(g);
    YonedaExtension x = extension_from_h1(h[0]), y = extension_from_h1(h[1]);
    YonedaExtension zero = zero_extension(trivial_module(g), trivial_module(g), 1);
    CHECK(equivalent(baer_sum(x, zero), x));
    CHECK(equivalent(baer_sum(x, y), baer_sum(y, x)));
    YonedaExtension minus_x = pushout(x, scalar_map(x.kernel(), 4));
    CHECK(equivalent(baer_sum(x, minus_x), zero));
    CHECK(ratio(yoneda_cocycle(baer_sum(x, y)), h[0] + h[1]) == 4);
    CHECK_FALSE(equivalent(x, y));
}

TEST_CASE("splice is bilinear") {
    GroupPtr g = c5xc5();
    auto h = h1_basis(g);
    YonedaExtension x0 = extension_from_h1(h[0]), x1 = extension_from_h1(h[1]);
    YonedaExtension sp = splice(x0, x1);
    CHECK(sp.degree() == 2);
    CHECK(check_exact(sp).exact);
    CHECK(ratio(yoneda_cocycle(sp), cup(h[0], h[1])) == 1);
    YonedaExtension lhs = splice(baer_sum(x0, x1), x1);
    YonedaExtension rhs = baer_sum(splice(x0, x1), splice(x1, x1));
    CHECK(equivalent(lhs, rhs));
    YonedaExtension right = splice(x0, baer_sum(x0, x1));
    CHECK(equivalent(right, baer_sum(splice(x0, x0), splice(x0, x1))));
    YonedaExtension zero2 = zero_extension(trivial_module(g), trivial_module(g), 2);
    CHECK(equivalent(splice(x0, pushout(x1, scalar_map(x1.kernel(), 0))), zero2));
}

TEST_CASE("malformed sequences are refused") {
    GroupPtr g = c5xc5();
    GModule f = trivial_module(g);
    CHECK_THROWS_AS((void)make_yoneda({f, f, f}, {identity_map(f), identity_map(f)}), extension_error);
}

TEST_CASE("crossed 1-fold extension of eta") {
    const Fixture& f = fixture();
    CHECK(check_crossed(f.eta_x).exact);
    CHECK(crossed_module_check(crossed_module_of(f.eta_x)).holds);
    CHECK(ratio(crossed_cocycle(f.eta_x), f.eta.cocycle) == 1);
    CrossedExtension from_group = crossed_from_central(f.eta.ghat, f.eta.kernel_generator, f.eta.quotient_map, f.g);
    CHECK(equivalent(from_group, f.eta_x));
    CHECK(crossed_cocycle(zero_crossed(f.g, 1)).is_zero());
    CHECK(ratio(crossed_cocycle(pushout(f.eta_x, scalar_map(f.eta_x.kernel(), 3))), f.eta.cocycle) == 3);
    Cochain other = cup(h1_basis(f.g)[0], h1_basis(f.g)[1]);
    CHECK(ratio(crossed_cocycle(baer_sum(f.eta_x, crossed_from_cocycle(other))), f.eta.cocycle + other) == 1);
}

TEST_CASE("theta as a crossed 2-fold extension") {
    const Fixture& f = fixture();
    CHECK(f.theta_x.degree() == 2);
    CHECK(check_crossed(f.theta_x).exact);
    CHECK(crossed_module_check(crossed_module_of(f.theta_x)).holds);
    Cochain z = crossed_cocycle(f.theta_x);
    CHECK(ratio(z, f.theta) == 4);
    CHECK(ratio(crossed_cocycle(baer_sum(f.theta_x, f.theta_x)), f.theta) == 3);
    CHECK(ratio(crossed_cocycle(pushout(f.theta_x, scalar_map(f.theta_x.kernel(), 2))), f.theta) == 3);
    CHECK(is_coboundary(crossed_cocycle(zero_crossed(f.g, 2))).status == CoboundaryStatus::is_coboundary);
}

TEST_CASE("pullback matches restriction") {
    const Fixture& f = fixture();
    std::vector<Elem> id(f.g->order());
    for (Elem x = 0; x < f.g->order(); ++x)
        id[x] = x;
    CHECK(ratio(crossed_cocycle(pullback(f.theta_x, f.g, id)), f.theta) == 4);
    // <a1, a2>, where eta restricts to a nonzero class
    SubgroupGroup a = as_group(subgroup_generated(f.g, {f.g->generator(1), f.g->generator(2)}));
    Cochain eta_a = restrict(f.eta.cocycle, a);
    CHECK(is_coboundary(eta_a).status == CoboundaryStatus::not_coboundary);
    CHECK(ratio(crossed_cocycle(pullback(f.eta_x, a.group, a.to_parent)), eta_a) == 1);
    // <s, a2>, where theta restricts to zero
    SubgroupGroup c = as_group(subgroup_generated(f.g, {f.g->generator(0), f.g->generator(2)}));
    CHECK(ratio(crossed_cocycle(pullback(f.theta_x, c.group, c.to_parent)), restrict(f.theta, c)) == 0);
}

TEST_CASE("X-diagram self equivalence and its negative control") {
    const Fixture& f = fixture();
    XDiagramWitness w = self_equivalence_witness(f.theta_x);
    XDiagramReport ok = verify_x_diagram(f.theta_x, f.theta_x, w);
    CHECK(ok.holds);
    for (const auto& c : ok.conditions)
        CHECK_MESSAGE(c.holds, c.name);
    XDiagramWitness bad = w;
    bad.mu2 = w.mu1;
    CHECK_FALSE(verify_x_diagram(f.theta_x, f.theta_x, bad).holds);
}

}

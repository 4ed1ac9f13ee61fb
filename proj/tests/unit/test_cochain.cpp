#include "cohomoforge/cochain.hpp"
#include "cohomoforge/family.hpp"
#include "support.hpp"

#include <doctest.h>

#include <random>

using namespace cohomoforge;

namespace {

Cochain random_cochain(GroupPtr g, std::size_t deg, std::mt19937_64& rng) {
    return cochain_from(g, deg, [&](const Elem*) { return static_cast<residue_t>(rng() % g->prime()); });
}

GroupPtr c5xc5() {
    return make_group(PcPresentation(5, 2));
}

} // namespace

TEST_SUITE("cochain") {

TEST_CASE("normalized storage and indexing") {
    GroupPtr g = make_group(PcPresentation(5, 1));
    Cochain c(g, 2);
    CHECK(c.size() == 16);
    c.set({1, 3}, 4);
    CHECK(c({1, 3}) == 4);
    CHECK(c({0, 3}) == 0);
    Elem t[2];
    c.tuple_of(c.index(std::array<Elem, 2>{2, 4}.data()), t);
    CHECK(t[0] == 2);
    CHECK(t[1] == 4);
    CHECK_THROWS_AS((void)(c + Cochain(g, 1)), cochain_error);
}

TEST_CASE("d o d = 0") {
    std::mt19937_64 rng(2);
    GroupPtr g = build_gr({5, 2, false});
    for (std::size_t deg = 0; deg <= 1; ++deg)
        for (int i = 0; i < 5; ++i)
            CHECK(differential(differential(random_cochain(g, deg, rng))).is_zero());
    GroupPtr h = c5xc5();
    CHECK(differential(differential(random_cochain(h, 2, rng))).is_zero());
}

TEST_CASE("Leibniz rule for cup products") {
    std::mt19937_64 rng(4);
    GroupPtr g = c5xc5();
    for (int i = 0; i < 5; ++i) {
        Cochain u = random_cochain(g, 1, rng), v = random_cochain(g, 1, rng);
        // d(u v) = du v - u dv for deg u = 1
        CHECK(differential(cup(u, v)) == cup(differential(u), v) - cup(u, differential(v)));
    }
}

TEST_CASE("restriction is a ring map") {
    std::mt19937_64 rng(6);
    GroupPtr g = build_gr({5, 2, false});
    Subgroup e = enumerate_elementary_abelian(g, 2).back();
    SubgroupGroup sg = as_group(e);
    Cochain u = random_cochain(g, 1, rng), v = random_cochain(g, 1, rng);
    CHECK(restrict(cup(u, v), sg) == cup(restrict(u, sg), restrict(v, sg)));
    CHECK(restrict(differential(u), sg) == differential(restrict(u, sg)));
    CHECK(restrict(u + v, sg) == restrict(u, sg) + restrict(v, sg));
}

TEST_CASE("views evaluate like stored cochains") {
    std::mt19937_64 rng(8);
    GroupPtr g = c5xc5();
    Cochain u = random_cochain(g, 1, rng), v = random_cochain(g, 2, rng);
    CHECK(materialize(cup_view(view(u), view(v))) == cup(u, v));
    CochainView w = view(v);
    Cochain dv = differential(v);
    Elem args[3];
    for (std::size_t i = 0; i < dv.size(); i += 97) {
        dv.tuple_of(i, args);
        CHECK(differential_at(w, args) == dv.value(i));
    }
}

TEST_CASE("cohomology dimensions match the dense oracle") {
    const auto& o = test::oracle()["cohomology"];
    GroupPtr c5 = make_group(PcPresentation(5, 1));
    const auto d1 = o["C5"].get<std::vector<std::size_t>>();
    for (std::size_t k = 0; k < d1.size(); ++k)
        CHECK(cohomology_dim(c5, k) == d1[k]);
    const auto d2 = o["C5xC5"].get<std::vector<std::size_t>>();
    for (std::size_t k = 0; k < d2.size(); ++k)
        CHECK(cohomology_dim(c5xc5(), k) == d2[k]);
}

TEST_CASE("coboundary decisions with witnesses") {
    std::mt19937_64 rng(10);
    GroupPtr g = build_gr({5, 2, false});
    Cochain phi = random_cochain(g, 1, rng);
    CoboundaryCertificate c = is_coboundary(differential(phi));
    REQUIRE(c.status == CoboundaryStatus::is_coboundary);
    REQUIRE(c.witness.has_value());
    CHECK(differential(*c.witness) == differential(phi));

    Cochain x = coordinate_cochain(g, 0);
    CHECK(is_coboundary(x).status == CoboundaryStatus::not_coboundary);
    Cochain notclosed = random_cochain(g, 1, rng);
    if (!check_closed(notclosed).closed)
        CHECK_THROWS_AS((void)is_coboundary(notclosed), precondition_error);

    SolveBudget tiny;
    tiny.max_unknowns = 3;
    CoboundaryCertificate over = is_coboundary(cup(cup(x, x), x), tiny);
    CHECK(over.status == CoboundaryStatus::inconclusive);
    CHECK(over.unknowns > 3);
    SolveBudget capped;
    capped.max_order_degree2 = 25;
    CHECK(is_coboundary(cup(x, x), capped).status == CoboundaryStatus::inconclusive);
    capped.full = true;
    CHECK(is_coboundary(cup(x, x), capped).status == CoboundaryStatus::is_coboundary);
}

TEST_CASE("the extraspecial class on C5 x C5") {
    const auto& o = test::oracle()["extraspecial"];
    GroupPtr g = c5xc5();
    Cochain z = cup(coordinate_cochain(g, 0), coordinate_cochain(g, 1));
    CHECK(check_closed(z).closed);
    CHECK((is_coboundary(z).status == CoboundaryStatus::is_coboundary) == o["is_coboundary"].get<bool>());
    CentralExtension ext = cocycle_to_extension(z);
    CHECK(ext.total->order() == o["extension_order"].get<std::uint64_t>());
    CHECK(exponent_of(ext.total) == o["extension_exponent"].get<std::uint64_t>());
    CHECK(center(ext.total).order() == o["extension_center_order"].get<std::uint64_t>());
    CHECK(has_complement(ext.total, ext.kernel).has_value() == o["has_complement"].get<bool>());
}

TEST_CASE("extension and cocycle round trip") {
    std::mt19937_64 rng(12);
    GroupPtr g = c5xc5();
    auto h1 = h1_basis(g);
    REQUIRE(h1.size() == 2);
    for (int i = 0; i < 4; ++i) {
        // a random class plus a random coboundary
        Cochain z = cup(h1[0], h1[1]).scaled(static_cast<residue_t>(rng() % 5))
            + cup(h1[0], h1[0]).scaled(static_cast<residue_t>(rng() % 5))
            + differential(random_cochain(g, 1, rng));
        CentralExtension ext = cocycle_to_extension(z);
        ExtensionCocycle back = extension_to_cocycle(ext.total, ext.kernel, ext.kernel_generator, g);
        CHECK(is_coboundary(back.cocycle - z).status == CoboundaryStatus::is_coboundary);
    }
}

TEST_CASE("pull back along a homomorphism") {
    GroupPtr g = build_gr({5, 2, false});
    GroupPtr c5 = make_group(PcPresentation(5, 1));
    std::vector<Elem> hom(5);
    for (Elem k = 0; k < 5; ++k)
        hom[k] = g->power(g->generator(0), k);
    Cochain x = coordinate_cochain(g, 0);
    Cochain pulled = pull_back(x, c5, hom);
    CHECK(pulled == coordinate_cochain(c5, 0));
}

}

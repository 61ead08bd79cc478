#include <doctest.h>

#include <set>

#include "lenskein/invariants.hpp"
#include "lenskein/moves.hpp"

using namespace lenskein;

namespace {

// The drawn non-interleaving commutation example: grid number 4 in L(7,2),
// columns 1 and 2 exchanged.
GridDiagram commut_l72_before() {
    return GridDiagram(LensParams{7, 2}, 4,
                       {Cell{10, 0}, Cell{17, 1}, Cell{16, 2}, Cell{19, 3}},
                       {Cell{3, 0}, Cell{24, 1}, Cell{2, 2}, Cell{1, 3}});
}

GridDiagram commut_l72_after() {
    return GridDiagram(LensParams{7, 2}, 4,
                       {Cell{9, 0}, Cell{18, 1}, Cell{16, 2}, Cell{19, 3}},
                       {Cell{3, 0}, Cell{24, 1}, Cell{1, 2}, Cell{2, 3}});
}

// The drawn two-column skein patterns embedded in L(2,1).
GridDiagram skein_plus() {
    return GridDiagram(LensParams{2, 1}, 2, {Cell{0, 0}, Cell{1, 1}}, {Cell{2, 0}, Cell{3, 1}});
}
GridDiagram skein_minus() {
    return GridDiagram(LensParams{2, 1}, 2, {Cell{0, 1}, Cell{1, 0}}, {Cell{2, 1}, Cell{3, 0}});
}
GridDiagram skein_zero() {
    return GridDiagram(LensParams{2, 1}, 2, {Cell{0, 1}, Cell{1, 0}}, {Cell{2, 0}, Cell{3, 1}});
}

GridDiagram coincident_unknot(LensParams lens) {
    return GridDiagram(lens, 1, {Cell{0, 0}}, {Cell{0, 0}});
}

GridDiagram swap_o_markings(const GridDiagram& d, int c) {
    int n = d.n(), w = d.width();
    std::vector<Cell> os;
    for (Cell cell : d.os()) {
        int r = cell.x % n;
        if (r == c)
            os.push_back(Cell{(cell.x + 1) % w, cell.y});
        else if (r == (c + 1) % n)
            os.push_back(Cell{(cell.x + w - 1) % w, cell.y});
        else
            os.push_back(cell);
    }
    return GridDiagram(d.lens(), n, std::move(os), d.xs());
}

}  // namespace

TEST_CASE("drawn stabilization examples in the 7-cell strip") {
    // one-row diagram with X in cell 1 and O in cell 6
    GridDiagram strip(LensParams{7, 2}, 1, {Cell{6, 0}}, {Cell{1, 0}});
    REQUIRE(validate(strip).ok());

    GridDiagram xnw = stabilize(strip, 0, {MarkType::X, Corner::NW});
    CHECK(xnw == GridDiagram(LensParams{7, 2}, 2, {Cell{3, 0}, Cell{12, 1}},
                             {Cell{2, 0}, Cell{3, 1}}));

    GridDiagram osw = stabilize(strip, 0, {MarkType::O, Corner::SW});
    CHECK(osw == GridDiagram(LensParams{7, 2}, 2, {Cell{13, 0}, Cell{12, 1}},
                             {Cell{2, 0}, Cell{13, 1}}));
}

TEST_CASE("stabilize then destabilize round trips") {
    std::vector<GridDiagram> ds;
    ds.push_back(fixture_ln(1));
    ds.push_back(trivial_diagram(LensParams{5, 2}, {0, 1, 2, 0, 3}));
    ds.push_back(trivial_diagram(LensParams{3, 1}, {0, 1, 1}));
    ds.push_back(coincident_unknot({3, 1}));
    ds.push_back(coincident_unknot({1, 0}));
    for (const GridDiagram& d : ds) {
        for (MarkType mark : {MarkType::X, MarkType::O}) {
            for (Corner corner : {Corner::NW, Corner::NE, Corner::SW, Corner::SE}) {
                GridDiagram s = stabilize(d, 0, {mark, corner});
                CHECK(validate(s).ok());
                CHECK(s.n() == d.n() + 1);
                auto sites = find_destabilization_sites(s);
                REQUIRE(!sites.empty());
                bool recovered = false;
                for (const DestabSite& site : sites)
                    if (canonical_key(destabilize(s, site)) == canonical_key(d)) recovered = true;
                CHECK(recovered);
            }
        }
    }
}

TEST_CASE("stabilized coincident unknot has exactly one site") {
    GridDiagram u = coincident_unknot({3, 1});
    GridDiagram s = stabilize(u, 0, {MarkType::X, Corner::NW});
    auto sites = find_destabilization_sites(s);
    REQUIRE(sites.size() == 1);
    CHECK(sites[0].split_unknot);
    CHECK(canonical_key(destabilize(s, sites[0])) == canonical_key(u));
}

TEST_CASE("trivial diagrams with distinct cells have no destabilization site") {
    GridDiagram d = trivial_diagram(LensParams{5, 2}, {0, 1, 2, 0, 3});
    CHECK(find_destabilization_sites(d).empty());
}

TEST_CASE("drawn commutation example") {
    GridDiagram before = commut_l72_before();
    REQUIRE(validate(before).ok());
    CHECK(classify_column_commutation(before, 1) == CommutationClass::NonInterleaving);
    CHECK(commute_columns(before, 1) == commut_l72_after());
    CHECK(commute_columns(commute_columns(before, 1), 1) == before);
}

TEST_CASE("skein patterns classify and transform as drawn") {
    GridDiagram dp = skein_plus(), dm = skein_minus(), d0 = skein_zero();
    REQUIRE(validate(dp).ok());
    REQUIRE(validate(dm).ok());
    REQUIRE(validate(d0).ok());

    CHECK(classify_column_commutation(dp, 0) == CommutationClass::Interleaving);
    CHECK(classify_column_commutation(dm, 0) == CommutationClass::Interleaving);
    CHECK(classify_column_commutation(d0, 0) == CommutationClass::NonInterleaving);

    CHECK(commute_columns(dp, 0) == dm);
    CHECK(resolve_skein(dm, 0) == d0);
    CHECK(resolve_skein(dp, 0) == commute_columns(d0, 0));

    CHECK(skein_sign(dp, 0) == SkeinSign::Positive);
    CHECK(skein_sign(dm, 0) == SkeinSign::Negative);
    CHECK(canonical_key(dp) != canonical_key(dm));

    // swapping the O markings differs from the resolution by a
    // non-interleaving commutation
    GridDiagram oswap = swap_o_markings(dp, 0);
    GridDiagram xswap = resolve_skein(dp, 0);
    CHECK(classify_column_commutation(xswap, 0) == CommutationClass::NonInterleaving);
    CHECK(commute_columns(xswap, 0) == oswap);
}

TEST_CASE("shared-segment pair is illegal") {
    GridDiagram d(LensParams{2, 1}, 2, {Cell{0, 0}, Cell{1, 1}}, {Cell{1, 0}, Cell{0, 1}});
    REQUIRE(validate(d).ok());
    CHECK(classify_column_commutation(d, 0) == CommutationClass::Illegal);
    CHECK_THROWS_AS(commute_columns(d, 0), Error);
    CHECK_THROWS_AS(resolve_skein(d, 0), Error);
    CHECK_THROWS_AS(skein_sign(d, 0), Error);
}

TEST_CASE("fixture family first columns make a negative skein crossing") {
    for (int n = 1; n <= 5; ++n) {
        GridDiagram d = fixture_ln(n);
        CHECK(classify_column_commutation(d, 0) == CommutationClass::Interleaving);
        CHECK(skein_sign(d, 0) == SkeinSign::Negative);
        // crossing change moves tb by exactly 2, and the sign flips
        GridDiagram c = commute_columns(d, 0);
        CHECK(tb_q(c) == tb_q(d) + Rational(2));
        CHECK(skein_sign(c, 0) == SkeinSign::Positive);
    }
}

TEST_CASE("row commutations") {
    // resolving the crossing-changed n=1 fixture enables a legal
    // non-interleaving row exchange across the top gluing
    GridDiagram r = resolve_skein(commute_columns(fixture_ln(1), 0), 0);
    REQUIRE(validate(r).ok());
    CHECK(classify_row_commutation(r, 2) == CommutationClass::NonInterleaving);
    GridDiagram moved = commute_rows(r, 2);
    CHECK(validate(moved).ok());
    CHECK(commute_rows(moved, 2) == r);
    CHECK(tb_q(moved) == tb_q(r));
    CHECK(rot_q(moved) == rot_q(r));

    // rows of the n=1 fixture all interleave
    GridDiagram l1 = fixture_ln(1);
    for (int i = 0; i < 3; ++i)
        CHECK(classify_row_commutation(l1, i) == CommutationClass::Interleaving);

    // shared-section rows are illegal: stack two markings in one column
    GridDiagram shared(LensParams{3, 1}, 2, {Cell{0, 0}, Cell{1, 1}}, {Cell{0, 1}, Cell{1, 0}});
    REQUIRE(validate(shared).ok());
    CHECK(classify_row_commutation(shared, 0) == CommutationClass::Illegal);
    CHECK_THROWS_AS(commute_rows(shared, 0), Error);
}

TEST_CASE("every move output passes validate") {
    GridDiagram d = fixture_ln(2);
    for (int c = 0; c < d.n(); ++c) {
        auto cls = classify_column_commutation(d, c);
        if (cls == CommutationClass::Illegal) continue;
        CHECK(validate(commute_columns(d, c)).ok());
        if (cls == CommutationClass::Interleaving) CHECK(validate(resolve_skein(d, c)).ok());
    }
    for (int r = 0; r < d.n(); ++r) {
        if (classify_row_commutation(d, r) == CommutationClass::Illegal) continue;
        CHECK(validate(commute_rows(d, r)).ok());
    }
}

TEST_CASE("error paths") {
    GridDiagram d = fixture_ln(1);
    CHECK_THROWS_AS(stabilize(d, 9, {MarkType::X, Corner::NW}), Error);
    CHECK_THROWS_AS(classify_column_commutation(d, 7), Error);
    GridDiagram u(LensParams{3, 1}, 1, {Cell{0, 0}}, {Cell{0, 0}});
    CHECK_THROWS_AS(classify_column_commutation(u, 0), Error);
    DestabSite bogus{Cell{4, 0}, MarkType::X, Corner::NW, false};
    CHECK_THROWS_AS(destabilize(d, bogus), Error);
}

TEST_CASE("resolution changes the component count by one") {
    std::vector<std::pair<GridDiagram, int>> cases = {{fixture_ln(1), 0},
                                                      {fixture_ln(2), 0},
                                                      {skein_plus(), 0},
                                                      {skein_minus(), 0}};
    for (const auto& [d, c] : cases) {
        auto before = components(d).components.size();
        auto after = components(resolve_skein(d, c)).components.size();
        CHECK((before + 1 == after || before == after + 1));
    }
}

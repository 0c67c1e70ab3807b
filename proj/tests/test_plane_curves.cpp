#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "singlip/plane_curves.hpp"
#include "support/blowup_sim.hpp"
#include "support/corpus.hpp"
#include "support/fixtures.hpp"

using namespace singlip;
using namespace singlip::testing;

namespace {

using Strings = std::vector<std::string>;

PuiseuxBranch br(std::string_view s) { return parse_series(s); }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::internal;
}

CurveCollection explicit_curves(std::string_view text) { return CurveCollection::from_explicit(parse_branch_file(text)); }

// "t3 5/2 satellite(1,2) arrows c" per vertex, plus sorted edges.
Strings describe(const PlaneTree& t) {
  Strings out;
  for (std::size_t v = 0; v < t.size(); ++v) {
    const auto& x = t.vertices[v];
    std::string line = "t" + std::to_string(v) + " " + to_string(t.rate(v));
    if (x.event == TreeEvent::free) line += " free(" + std::to_string(x.on) + ")";
    if (x.event == TreeEvent::satellite)
      line += " satellite(" + std::to_string(x.on) + "," + std::to_string(x.other) + ")";
    for (const auto& a : t.arrows_at(v)) line += " " + a;
    out.push_back(line);
  }
  for (const auto& e : t.edges) out.push_back(std::to_string(e.a) + "-" + std::to_string(e.b));
  return out;
}

Strings piece_labels(const PieceList& list) {
  Strings out;
  for (const auto& p : list.pieces) out.push_back(p.label());
  return out;
}

// Isomorphism invariant of a rated tree with multiplicities and arrows.
std::string tree_signature(std::size_t n, const std::vector<Edge>& edges, const std::vector<std::string>& labels) {
  Adjacency adj(n);
  for (const auto& e : edges) {
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  return tree_code(adj, labels);
}

std::string signature(const PlaneTree& t) {
  std::vector<std::string> labels;
  for (std::size_t v = 0; v < t.size(); ++v) {
    auto arrows = t.arrows_at(v);
    std::sort(arrows.begin(), arrows.end());
    std::string l = to_string(t.rate(v)) + "m" + std::to_string(t.vertices[v].rate.den);
    for (const auto& a : arrows) l += "," + a;
    labels.push_back(l);
  }
  return tree_signature(t.size(), t.edges, labels);
}

std::string signature(const SimTree& t) {
  std::vector<std::string> labels;
  for (std::size_t v = 0; v < t.vertices.size(); ++v) {
    std::vector<std::string> arrows;
    for (const auto& [name, at] : t.arrows)
      if (at == static_cast<int>(v)) arrows.push_back(name);
    std::sort(arrows.begin(), arrows.end());
    std::string l = to_string(t.vertices[v].rate) + "m" + std::to_string(t.vertices[v].multiplicity);
    for (const auto& a : arrows) l += "," + a;
    labels.push_back(l);
  }
  std::vector<Edge> edges;
  for (const auto& [a, b] : t.edges) edges.emplace_back(a, b);
  return tree_signature(t.vertices.size(), edges, labels);
}

// Up to three branches: smooth with integer terms (possibly the x-axis), or
// with one characteristic exponent p/2.
std::vector<NamedBranch> random_branches(std::mt19937& rng) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const int n = pick(1, 3);
  std::vector<NamedBranch> out;
  for (int i = 0; i < n; ++i) {
    std::map<Rational, Rational> terms;
    for (int k = 1; k <= 3; ++k)
      if (int c = pick(-1, 2); c != 0) terms[Rational(k)] = Rational(c);
    if (pick(0, 1) == 1) {
      const Rational e(2 * pick(1, 3) + 1, 2);
      for (auto it = terms.begin(); it != terms.end();) it = it->first > e ? terms.erase(it) : std::next(it);
      terms[e] = Rational(pick(0, 1) ? 1 : -2);
      if (pick(0, 1) == 1) terms[e + Rational(1, 2)] = Rational(1);
    }
    std::vector<PuiseuxTerm> list;
    for (const auto& [e, c] : terms) list.push_back({e, c});
    out.push_back({"b" + std::to_string(i), PuiseuxBranch(list)});
  }
  return out;
}

}  // namespace

TEST(Contact, Examples) {
  EXPECT_EQ(contact_exponent(br("x"), br("0")), Rational(1));
  EXPECT_EQ(contact_exponent(br("x^2"), br("x^2 + x^3")), Rational(3));
  EXPECT_EQ(contact_exponent(br("x"), br("2x")), Rational(1));
  EXPECT_EQ(contact_exponent(br("x + x^2"), br("x + 2x^2")), Rational(2));
  EXPECT_EQ(contact_exponent(br("x^(3/2)"), br("x^(3/2) + x^2")), Rational(2));
  EXPECT_EQ(contact_exponent(br("x^(3/2)"), br("2 x^(3/2)")), Rational(3, 2));
  EXPECT_EQ(contact_exponent(br("x"), br("x^(3/2)")), Rational(1));
  EXPECT_EQ(contact_exponent(br("x^2"), br("x^2 + x^(5/2)")), Rational(5, 2));
  EXPECT_EQ(contact_exponent(br("0"), br("x^(5/2)")), Rational(5, 2));
  EXPECT_EQ(kind_of([] { contact_exponent(br("x^(3/2)"), br("-x^(3/2)")); }), ErrorKind::branches_coincide);
  EXPECT_EQ(kind_of([] { contact_exponent(br("0"), br("0")); }), ErrorKind::branches_coincide);
}

TEST(Contact, Symmetric) {
  const Strings series{"x", "x + x^2", "x^(3/2)", "x + x^(5/2)", "x^2 - x^(5/2) + x^3", "3x + x^(7/2)"};
  for (const auto& a : series)
    for (const auto& b : series)
      if (a != b) {
        EXPECT_EQ(contact_exponent(br(a), br(b)), contact_exponent(br(b), br(a))) << a << " / " << b;
      }
}

TEST(CharacteristicExponents, Examples) {
  EXPECT_TRUE(characteristic_exponents(br("x + x^2 + x^3")).empty());
  EXPECT_EQ(characteristic_exponents(br("x^(3/2)")), (std::vector<Rational>{Rational(3, 2)}));
  EXPECT_EQ(characteristic_exponents(br("x^2 + x^(5/2) + x^3")), (std::vector<Rational>{Rational(5, 2)}));
  EXPECT_EQ(characteristic_exponents(br("x^(3/2) + x^(7/4)")), (std::vector<Rational>{Rational(3, 2), Rational(7, 4)}));
  EXPECT_EQ(br("x^(3/2) + x^(7/4)").multiplicity(), 4);
}

TEST(EssentialExponents, Examples) {
  EXPECT_EQ(essential_integer_exponents(3, {4, 5}), (std::vector<std::int64_t>{4}));
  EXPECT_EQ(essential_integer_exponents(2, {3, 4, 5}), (std::vector<std::int64_t>{3}));
  EXPECT_EQ(essential_integer_exponents(4, {6, 7}), (std::vector<std::int64_t>{6, 7}));
  EXPECT_EQ(essential_integer_exponents(4, {8, 10, 11}), (std::vector<std::int64_t>{10, 11}));
  EXPECT_TRUE(essential_integer_exponents(1, {2, 3}).empty());
  EXPECT_EQ(kind_of([] { essential_integer_exponents(0, {1}); }), ErrorKind::invalid_value);
}

TEST(BlowUpBranch, Examples) {
  EXPECT_EQ(blow_up_branch(br("x^(5/2)")), br("x^(3/2)"));
  EXPECT_EQ(blow_up_branch(br("x^2 + x^3")), br("x + x^2"));
  EXPECT_EQ(kind_of([] { blow_up_branch(br("x")); }), ErrorKind::exponent_underflow);
  EXPECT_EQ(kind_of([] { blow_up_branch(blow_up_branch(br("x^(3/2)"))); }), ErrorKind::exponent_underflow);
  EXPECT_EQ(blow_up_branch(br("0")), br("0"));
}

TEST(BlowUpBranch, ShiftIsInverse) {
  for (const auto& s : Strings{"x", "x^(1/2)", "x + x^(5/2)", "2 x^(3/2) - x^(7/4)", "x^(2/3) + x^(5/6)"}) {
    auto b = br(s);
    EXPECT_EQ(blow_up_branch(b.shifted(Rational(1))), b) << s;
  }
}

TEST(Series, PrintAndParse) {
  auto b = br("x + 2 x^2 - 3/2 x^(5/2)");
  EXPECT_EQ(to_string(b), "x + 2 x^2 - 3/2 x^(5/2)");
  EXPECT_EQ(br(to_string(b)), b);
  EXPECT_EQ(kind_of([] { br("x + + x"); }), ErrorKind::syntax);
  EXPECT_EQ(br("x^2 + x"), br("x + x^2"));
  EXPECT_EQ(to_string(br("0")), "0");
  EXPECT_EQ(kind_of([] { br("x + 2x"); }), ErrorKind::syntax);
  EXPECT_EQ(kind_of([] { br("y^2"); }), ErrorKind::syntax);
  EXPECT_EQ(kind_of([] { br("x^(3/2"); }), ErrorKind::syntax);
}

TEST(AnCurve, Examples) {
  auto a0 = an_curve(0, "D");
  ASSERT_EQ(a0.size(), 1u);
  EXPECT_TRUE(characteristic_exponents(a0.branch(0).series).empty());

  auto a3 = an_curve(3, "D");
  ASSERT_EQ(a3.size(), 2u);
  EXPECT_EQ(a3.contact(0, 1), Rational(2));
  EXPECT_EQ(contact_exponent(a3.branch(0).series, a3.branch(1).series), Rational(2));

  auto a4 = an_curve(4, "D");
  ASSERT_EQ(a4.size(), 1u);
  EXPECT_EQ(characteristic_exponents(a4.branch(0).series), (std::vector<Rational>{Rational(5, 2)}));
  EXPECT_EQ(describe(resolution_tree(a4)),
            (Strings{"t0 1", "t1 2 free(0)", "t2 3 free(1)", "t3 5/2 satellite(1,2) D", "0-1", "1-3", "2-3"}));

  EXPECT_EQ(kind_of([] { an_curve(-1, "D"); }), ErrorKind::invalid_value);
}

TEST(Collection, Validation) {
  EXPECT_EQ(kind_of([] { explicit_curves("branch a = x\nbranch a = 2x\n"); }), ErrorKind::syntax);
  EXPECT_EQ(kind_of([] {
              CurveCollection::from_generic({"a", "b", "c"}, {std::nullopt, std::nullopt, std::nullopt},
                                            {{Rational(0), Rational(2), Rational(1)},
                                             {Rational(2), Rational(0), Rational(3)},
                                             {Rational(1), Rational(3), Rational(0)}});
            }),
            ErrorKind::ultrametric);
  auto c = explicit_curves("branch a = x\nbranch b = x + x^2\nbranch c = x + x^2 + x^3\n");
  EXPECT_TRUE(c.is_ultrametric());
  EXPECT_EQ(c.contact(c.index_of("a"), c.index_of("c")), Rational(2));
  EXPECT_EQ(kind_of([&] { c.index_of("z"); }), ErrorKind::unknown_branch);
}

TEST(Discriminant, Minimal9) {
  auto d = discriminant_collection(build_gamma0(minimal9()));
  Strings names;
  for (const auto& b : d.curves.branches()) names.push_back(b.name);
  EXPECT_EQ(names, (Strings{"Δ1a", "Δ1b", "Δ2a", "Δ2b", "Δ3a", "Δ3b", "Δ4a", "Δ4b", "Δ5"}));
  auto at = [&](const char* a, const char* b) { return d.curves.contact(d.curves.index_of(a), d.curves.index_of(b)); };
  EXPECT_EQ(at("Δ1a", "Δ1b"), Rational(1));
  EXPECT_EQ(at("Δ3a", "Δ3b"), Rational(2));
  EXPECT_EQ(at("Δ4a", "Δ4b"), Rational(3));
  EXPECT_EQ(at("Δ4a", "Δ5"), Rational(2));
  EXPECT_EQ(at("Δ3a", "Δ5"), Rational(1));
  EXPECT_EQ(characteristic_exponents(d.curves.branch(d.curves.index_of("Δ5")).series),
            (std::vector<Rational>{Rational(5, 2)}));
  ASSERT_EQ(d.components.size(), 5u);
  EXPECT_EQ(d.components[3].an_type, 5);
  EXPECT_EQ(d.components[4].an_type, 4);

  EXPECT_EQ(describe(resolution_tree(d.curves)),
            (Strings{"t0 1 Δ1a Δ1b Δ2a Δ2b", "t1 2 free(0) Δ3a Δ3b", "t2 2 free(0)", "t3 3 free(2) Δ4a Δ4b",
                     "t4 3 free(2)", "t5 5/2 satellite(2,4) Δ5", "0-1", "0-2", "2-3", "2-5", "4-5"}));
}

TEST(Discriminant, ExplicitMinimal9MatchesGeneric) {
  std::ifstream in(std::string(SINGLIP_DATA_DIR) + "/minimal9_discriminant.branches");
  std::stringstream text;
  text << in.rdbuf();
  auto explicit_tree = resolution_tree(explicit_curves(text.str()));
  auto generic = discriminant_collection(build_gamma0(minimal9()));
  // The data file spells Δ as D.
  auto t = resolution_tree(generic.curves);
  for (auto& a : t.arrows) a.branch = "D" + a.branch.substr(std::string("Δ").size());
  EXPECT_EQ(describe(explicit_tree), describe(t));
}

TEST(Discriminant, SmallGraphs) {
  auto a2d = discriminant_collection(build_gamma0(a2()));
  ASSERT_EQ(a2d.curves.size(), 1u);
  EXPECT_EQ(describe(resolution_tree(a2d.curves)),
            (Strings{"t0 1", "t1 2 free(0)", "t2 3/2 satellite(0,1) Δ1", "0-2", "1-2"}));

  auto c = discriminant_collection(build_gamma0(chain_323()));
  EXPECT_EQ(describe(resolution_tree(c.curves)),
            (Strings{"t0 1 Δ1a Δ1b Δ3a Δ3b", "t1 2 free(0) Δ2a Δ2b", "0-1"}));

  auto cone = discriminant_collection(build_gamma0(single(-3)));
  EXPECT_EQ(describe(resolution_tree(cone.curves)), (Strings{"t0 1 Δ1a Δ1b Δ2a Δ2b"}));
}

TEST(ResolutionTree, Cusp) {
  auto t = resolution_tree(explicit_curves("branch c = x^(5/2)\n"));
  EXPECT_EQ(describe(t), (Strings{"t0 1", "t1 2 free(0)", "t2 3 free(1)", "t3 5/2 satellite(1,2) c", "0-1", "1-3", "2-3"}));
  EXPECT_EQ(t.nodes(), (std::vector<bool>{true, false, false, true}));
}

TEST(ResolutionTree, SmoothBranchThroughACusp) {
  auto t = resolution_tree(explicit_curves("branch s = x^2\nbranch c = x^2 + x^(5/2)\n"));
  EXPECT_EQ(describe(t),
            (Strings{"t0 1", "t1 2 free(0)", "t2 3 free(1) s", "t3 5/2 satellite(1,2) c", "0-1", "1-3", "2-3"}));
}

TEST(ResolutionTree, TransverseLines) {
  auto t = resolution_tree(explicit_curves("branch a = 0\nbranch b = x\n"));
  EXPECT_EQ(describe(t), (Strings{"t0 1 a b"}));
  EXPECT_EQ(piece_labels(carrousel_pieces(t)), (Strings{"B(1)"}));
}

TEST(ResolutionTree, Unsupported) {
  EXPECT_EQ(kind_of([] { resolution_tree(explicit_curves("branch c = x^(3/2) + x^(7/4)\n")); }),
            ErrorKind::unsupported_branch);
  EXPECT_EQ(kind_of([] { resolution_tree(explicit_curves("branch c = x^(2/3)\n")); }), ErrorKind::unsupported_branch);
}

TEST(Carrousel, Examples) {
  auto cusp = resolution_tree(explicit_curves("branch c = x^(5/2)\n"));
  EXPECT_EQ(piece_labels(carrousel_pieces(cusp)), (Strings{"B(1)", "B(5/2)", "A(1,5/2)"}));
  EXPECT_EQ(non_root_node_rates(cusp), (std::vector<Rational>{Rational(5, 2)}));

  auto d = resolution_tree(discriminant_collection(build_gamma0(minimal9())).curves);
  EXPECT_EQ(piece_labels(carrousel_pieces(d)),
            (Strings{"B(1)", "B(2)", "B(2)", "B(3)", "B(5/2)", "A(1,2)", "A(1,2)", "A(2,3)", "A(2,5/2)"}));
  EXPECT_EQ(non_root_node_rates(d), (std::vector<Rational>{Rational(2), Rational(2), Rational(5, 2), Rational(3)}));
}

TEST(PlaneCurveProperties, RatesFollowCreationEvents) {
  std::mt19937 rng(99);
  for (int round = 0; round < 300; ++round) {
    PlaneTree t;
    try {
      t = resolution_tree(CurveCollection::from_explicit(random_branches(rng)));
    } catch (const Error& e) {
      ASSERT_EQ(e.kind(), ErrorKind::branches_coincide);
      continue;
    }
    ASSERT_EQ(t.vertices[0].rate, (FractionPair{1, 1}));
    for (std::size_t v = 1; v < t.size(); ++v) {
      const auto& x = t.vertices[v];
      ASSERT_LT(x.on, v);
      const auto& on = t.vertices[x.on].rate;
      if (x.event == TreeEvent::free) {
        ASSERT_EQ(x.rate, (FractionPair{on.num + 1, on.den}));
      } else {
        ASSERT_EQ(x.event, TreeEvent::satellite);
        ASSERT_EQ(x.rate, mediant(on, t.vertices[x.other].rate));
      }
    }
    ASSERT_EQ(t.edges.size() + 1, t.size());
    ASSERT_TRUE(pieces_partition(carrousel_pieces(t), t.size()));
  }
}

TEST(PlaneCurveProperties, MatchesDirectBlowUps) {
  std::mt19937 rng(4242);
  int compared = 0;
  for (int round = 0; round < 400; ++round) {
    auto named = random_branches(rng);
    CurveCollection c;
    try {
      c = CurveCollection::from_explicit(named);
    } catch (const Error& e) {
      ASSERT_EQ(e.kind(), ErrorKind::branches_coincide);
      continue;
    }
    ++compared;
    std::string listing;
    for (const auto& b : c.branches()) listing += b.name + " = " + to_string(b.series) + "\n";
    ASSERT_EQ(signature(resolution_tree(c)), signature(simulate_resolution(c))) << listing;
  }
  EXPECT_GT(compared, 300);
}

TEST(PlaneCurveProperties, SimulatorOnDiscriminantData) {
  std::ifstream in(std::string(SINGLIP_DATA_DIR) + "/minimal9_discriminant.branches");
  std::stringstream text;
  text << in.rdbuf();
  auto c = explicit_curves(text.str());
  EXPECT_EQ(signature(resolution_tree(c)), signature(simulate_resolution(c)));
}

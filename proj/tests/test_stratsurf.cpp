#include <gtest/gtest.h>

#include <random>

#include "strathom/anomaly.hpp"
#include "strathom/library_md.hpp"
#include "strathom/random_surface.hpp"
#include "strathom/reduction.hpp"

using namespace strathom;

namespace {

const char* kTorus = R"(base trivial
darts 4
alpha (0 2) (1 3)
sigma (0 1 2 3)
face 0 toric-code
edge 0 ForgetTo1Disk(toric-code)
edge 1 ForgetTo1Disk(toric-code)
vertex 0 Unit
)";

StratifiedSurface sphere(const std::string& face, const std::string& base = "trivial") {
  return unstratified_surface(base, parse_label(face), 0);
}

std::int64_t gsd(const std::string& face, int g) { return evaluate(unstratified_surface("trivial", parse_label(face), g)).gsd_unit; }

}  // namespace

TEST(Labels, ParseAndSorts) {
  Label l = parse_label("VertexFuse(Unit, ForgetTo1Disk(toric-code), Obj(toric-code, [1,0]))");
  EXPECT_EQ(to_string(l), "VertexFuse(Unit,ForgetTo1Disk(toric-code),Obj(toric-code,[1,0]))");
  EXPECT_TRUE(backend_sort_check(l, Sort::Point).ok);
  EXPECT_FALSE(backend_sort_check(l, Sort::Line).ok);
  EXPECT_FALSE(backend_sort_check(parse_label("ForgetTo0Disk(toric-code)"), Sort::Point).ok);
  SortCheck sym = backend_sort_check(parse_label("RelProdOverE(mystery, toric-code)"), Sort::Region);
  EXPECT_TRUE(sym.ok);
  ASSERT_EQ(sym.symbolic.size(), 1u);
  EXPECT_EQ(sym.symbolic[0], "mystery");
  EXPECT_THROW(parse_label("Rev(toric-code"), InputError);
  EXPECT_TRUE(same_label(reversed(reversed(l)), l));
}

TEST(Surface, ValidateExamples) {
  Report r = validate_surface(sphere("toric-code"));
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(genus(sphere("toric-code")), 0);

  StratifiedSurface t = parse_surface(kTorus);
  EXPECT_TRUE(validate_surface(t).ok) << validate_surface(t).str();
  CellCounts c = cell_counts(t);
  EXPECT_EQ(c.v, 1);
  EXPECT_EQ(c.e, 2);
  EXPECT_EQ(c.f, 1);
  EXPECT_EQ(c.genus(), 1);

  std::string both = std::string(kTorus) + "edge 2 ForgetTo1Disk(toric-code)\n";
  Report bad = validate_surface(parse_surface(both));
  EXPECT_FALSE(bad.ok);
  EXPECT_NE(bad.str().find("orientation error"), std::string::npos);
}

TEST(Surface, StructuralFailures) {
  EXPECT_THROW(parse_surface("base trivial\ndarts 2\nalpha (0 0)\n"), InputError);
  EXPECT_THROW(parse_surface("base nowhere\ndarts 0\n"), InputError);
  EXPECT_THROW(parse_surface("base trivial\ndarts 0\nfrobnicate\n"), InputError);
  // two components
  std::string two = "base trivial\ndarts 4\nalpha (0 1) (2 3)\nsigma (0) (1) (2) (3)\n"
                    "face 0 toric-code\nface 2 toric-code\nedge 0 ForgetTo1Disk(toric-code)\n"
                    "edge 2 ForgetTo1Disk(toric-code)\nvertex 0 Unit\nvertex 1 Unit\nvertex 2 Unit\nvertex 3 Unit\n";
  EXPECT_FALSE(validate_surface(parse_surface(two)).ok);
  // missing vertex label
  std::string t = kTorus;
  t.erase(t.find("vertex"));
  EXPECT_FALSE(validate_surface(parse_surface(t)).ok);
}

TEST(Surface, FormatRoundTrip) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 30; ++i) {
    StratifiedSurface s = random_sphere(rng, 8);
    std::string text = format_surface(s);
    EXPECT_EQ(format_surface(parse_surface(text)), text);
  }
  EXPECT_EQ(format_surface(parse_surface(kTorus)), kTorus);
}

TEST(Evaluate, VerlindeOracle) {
  ModularData tc = from_metric_group(*builtin_metric_group("toric-code"));
  ModularData sem = from_metric_group(*builtin_metric_group("semion"));
  EXPECT_EQ(gsd("toric-code", 0), 1);
  EXPECT_EQ(gsd("toric-code", 1), 4);
  EXPECT_EQ(gsd("toric-code", 2), 16);
  EXPECT_EQ(gsd("semion", 1), 2);
  for (int g = 0; g <= 2; ++g) EXPECT_EQ(gsd("toric-code", g), verlinde_genus_dim(tc, g));
  EXPECT_EQ(gsd("semion", 1), verlinde_genus_dim(sem, 1));
  EvaluationResult r = evaluate(unstratified_surface("trivial", parse_label("toric-code"), 1));
  EXPECT_EQ(format_evaluation(r), "base: trivial\nmultiplicities: ()=4\ngsd: 4\ntotal_dim: 4\n");
}

TEST(Evaluate, VerlindeOnLibrary) {
  for (const auto& name : metric_group_names()) {
    MetricGroup mg = *builtin_metric_group(name);
    if (!is_nondegenerate(mg)) continue;
    for (int g = 0; g <= 3; ++g) EXPECT_EQ(gsd(name, g), verlinde_genus_dim(from_metric_group(mg), g)) << name << " g=" << g;
  }
  for (const auto& name : static_modular_names())
    for (int g = 0; g <= 2; ++g) EXPECT_EQ(gsd(name, g), verlinde_genus_dim(*builtin_modular_data(name), g)) << name << " g=" << g;
  EXPECT_EQ(gsd("ising", 1), 3);
  EXPECT_EQ(gsd("ising", 2), 10);
}

TEST(Evaluate, OverNontrivialBase) {
  // the E-multiplicity vector of an unstratified torus
  for (const std::string base : {"rep-z2", "svec"}) {
    Label c = parse_label("CenterOverE(vec-z2)");
    StratifiedSurface t = unstratified_surface(base, c, 1);
    EXPECT_TRUE(check_anomaly_free(t).ok) << check_anomaly_free(t).str();
    EvaluationResult r = evaluate(t);
    EXPECT_EQ(r.multiplicities.size(), 2u);
    EXPECT_EQ(r.gsd_unit, r.multiplicities[0]);
    EXPECT_EQ(r.total_dim, r.multiplicities[0] + r.multiplicities[1]);
    EXPECT_TRUE(check_anomaly_free(unstratified_surface(base, parse_label(base), 2)).ok);
    EXPECT_EQ(evaluate(unstratified_surface(base, parse_label(base), 2)).gsd_unit, 1);
  }
}

TEST(Evaluate, ChargesAndWalls) {
  // sphere with two vertices joined by an edge, charges e and e
  std::string text = R"(base trivial
darts 2
alpha (0 1)
sigma (0) (1)
face 0 toric-code
edge 0 ForgetTo1Disk(toric-code)
vertex 0 Obj(toric-code,[1,0])
vertex 1 Obj(toric-code,[1,0])
)";
  EXPECT_EQ(evaluate(parse_surface(text)).gsd_unit, 1);
  std::string odd = text;
  odd.replace(odd.rfind("[1,0]"), 5, "[0,1]");
  EXPECT_EQ(evaluate(parse_surface(odd)).gsd_unit, 0);
  // an e-m exchanging wall between the two charges: e on one side is m on the other
  std::string wall = odd;
  wall.replace(wall.find("ForgetTo1Disk(toric-code)"), 25, "em-swap");
  StratifiedSurface w = parse_surface(wall);
  EXPECT_FALSE(check_anomaly_free(w).ok);  // an open em-swap line ends in vertices with monodromy
}

TEST(Evaluate, SymbolicResidue) {
  StratifiedSurface s = sphere("RelProdOverE(mystery, toric-code)");
  EXPECT_THROW(evaluate(s), SymbolicResidue);
  Report r = check_anomaly_free(s);
  EXPECT_TRUE(r.ok);
  EXPECT_NE(r.str().find("assumed anomaly-free"), std::string::npos);
}

TEST(Anomaly, Examples) {
  EXPECT_TRUE(check_anomaly_free(sphere("toric-code")).ok);
  EXPECT_FALSE(check_anomaly_free(sphere("rep-z2")).ok);
  EXPECT_TRUE(check_anomaly_free(sphere("rep-z2", "rep-z2")).ok);
  EXPECT_TRUE(check_anomaly_free(sphere("ising")).ok);

  // gapped boundary: Vec_Z2 on a wall between the toric code and the vacuum
  std::string bdry = R"(base trivial
darts 2
alpha (0 1)
sigma (0 1)
face 0 toric-code
face 1 trivial
edge 0 vec-z2
vertex 0 Unit
)";
  Report r = check_anomaly_free(parse_surface(bdry));
  EXPECT_TRUE(r.ok) << r.str();
  std::string vac = bdry;
  vac.replace(vac.find("face 0 toric-code"), 17, "face 0 trivial");
  EXPECT_FALSE(check_anomaly_free(parse_surface(vac)).ok);
  EXPECT_THROW(evaluate(parse_surface(bdry)), SymbolicResidue);
}

TEST(Moves, Preconditions) {
  StratifiedSurface t = parse_surface(kTorus);
  EXPECT_THROW(move_contract(t, 0), DomainError);
  EXPECT_THROW(move_fuse(t, 0, 2), DomainError);
  EXPECT_THROW(move_merge(t, 0, 1), DomainError);
  EXPECT_THROW(reduce_genus(sphere("toric-code")), DomainError);
  EXPECT_THROW(reduce_to_points(t), DomainError);
  StratifiedSurface s = move_add_edge(sphere("toric-code"), 0, 0, 0);
  s = move_add_point(s, 0);
  auto faces = face_orbits(s);
  ASSERT_EQ(faces.size(), 2u);
  EXPECT_THROW(move_add_edge(s, faces[0][0], faces[1][0], faces[1][0]), DomainError);
}

TEST(Moves, ContractOnlyEdge) {
  StratifiedSurface two = parse_surface("base trivial\ndarts 2\nalpha (0 1)\nsigma (0) (1)\nface 0 toric-code\n"
                                        "edge 0 ForgetTo1Disk(toric-code)\nvertex 0 Unit\nvertex 1 Unit\n");
  StratifiedSurface one = move_contract(two, 0);
  EXPECT_TRUE(one.empty());
  EXPECT_TRUE(validate_surface(one).ok);
  EXPECT_EQ(to_string(one.lone_vertex), "VertexFuse(Unit,ForgetTo1Disk(toric-code),Unit)");
}

TEST(Moves, EulerBookkeeping) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    StratifiedSurface s = random_sphere(rng, 6);
    std::string what;
    CellCounts before = cell_counts(s);
    StratifiedSurface t = random_move(s, rng, what);
    CellCounts after = cell_counts(t);
    ASSERT_TRUE(validate_surface(t).ok) << what << "\n" << format_surface(s);
    std::string kind = what.substr(0, what.find(' '));
    int dv = after.v - before.v, de = after.e - before.e, df = after.f - before.f;
    if (kind == "contract") {
      EXPECT_TRUE(dv == -1 && de == -1 && df == 0) << what;
    }
    if (kind == "fuse" || kind == "merge" || kind == "remove-monogon") {
      EXPECT_TRUE(dv == 0 && de == -1 && df == -1) << what;
    }
    if (kind == "add-point") {
      EXPECT_TRUE(dv == 1 && de == 1 && df == 0) << what;
    }
    if (kind == "add-edge") {
      EXPECT_TRUE(dv == 0 && de == 1 && df == 1) << what;
    }
    EXPECT_EQ(after.genus(), 0);
  }
}

TEST(Moves, FigurePatterns) {
  // bigon between two edges pointing into it from the left and right faces
  std::string text = R"(base trivial
darts 4
alpha (0 1) (2 3)
sigma (0 2) (1 3)
face 0 toric-code
face 1 toric-code
edge 1 em-swap
edge 2 em-swap
vertex 0 Unit
vertex 1 Unit
)";
  StratifiedSurface s = parse_surface(text);
  ASSERT_TRUE(check_anomaly_free(s).ok) << check_anomaly_free(s).str();
  StratifiedSurface f = move_fuse(s, 1, 2);
  EXPECT_EQ(cell_counts(f).e, 1);
  EXPECT_EQ(cell_counts(f).f, 1);
  EXPECT_EQ(to_string(f.edge_label[f.canonical_of(0)]), "RelTensorBimod(em-swap,toric-code,em-swap)");
  EXPECT_TRUE(check_anomaly_free(f).ok) << check_anomaly_free(f).str();
  EXPECT_EQ(evaluate(f), evaluate(s));
  StratifiedSurface m = move_merge(s, 1, 2);
  EXPECT_NE(to_string(m.edge_label[m.canonical_of(0)]).find("EdgeMerge"), std::string::npos);
  EXPECT_EQ(evaluate(m), evaluate(s));
}

TEST(Moves, SubdivideThenContract) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    StratifiedSurface s = random_sphere(rng, 5);
    if (s.empty()) continue;
    int e = std::uniform_int_distribution<int>(0, s.darts() - 1)(rng);
    StratifiedSurface t = move_contract(move_add_point(s, e), s.darts());
    EXPECT_EQ(evaluate(t), evaluate(s));
    EXPECT_EQ(cell_counts(t).v, cell_counts(s).v);
  }
}

TEST(Properties, MoveInvariance) {
  std::mt19937_64 rng(20261016);
  int applied = 0;
  for (int trial = 0; trial < 200; ++trial) {
    StratifiedSurface s = random_sphere(rng, 7);
    ASSERT_TRUE(check_anomaly_free(s).ok) << format_surface(s) << check_anomaly_free(s).str();
    EvaluationResult before = evaluate(s);
    std::string what;
    StratifiedSurface t = random_move(s, rng, what);
    ++applied;
    Report r = check_anomaly_free(t);
    ASSERT_TRUE(r.ok) << what << "\n" << format_surface(s) << r.str();
    ASSERT_EQ(evaluate(t), before) << what << "\n" << format_surface(s);
  }
  EXPECT_EQ(applied, 200);
}

TEST(Properties, Confluence) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    StratifiedSurface s = random_sphere(rng, 9);
    std::mt19937_64 r1(trial), r2(trial + 1000);
    ReduceOptions o1, o2;
    o1.rng = &r1;
    o2.rng = &r2;
    EXPECT_EQ(evaluate(s, o1), evaluate(s, o2));
    EXPECT_EQ(evaluate(s, o1), evaluate(s));
  }
}

TEST(Properties, MonotoneMeasure) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    StratifiedSurface s = random_sphere(rng, 12);
    std::mt19937_64 pick(trial);
    ReduceOptions opt;
    opt.rng = trial % 2 ? &pick : nullptr;
    CellCounts prev = cell_counts(s);
    StratifiedSurface t = s;
    while (detail::reduce_step(t, opt)) {
      CellCounts c = cell_counts(t);
      EXPECT_TRUE(c.e < prev.e || (c.e == prev.e && c.f < prev.f));
      prev = c;
    }
    EXPECT_TRUE(t.empty());
    EXPECT_TRUE(reduce_to_points(t).empty());
  }
}

TEST(Properties, StratifiedTorus) {
  // a torus with a contractible em-swap loop and an e-e pair evaluates like the plain torus
  StratifiedSurface t = parse_surface(kTorus);
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    StratifiedSurface s = t;
    s = move_add_edge(s, 0, 0, 0);
    auto faces = face_orbits(s);
    for (const auto& f : faces)
      if (f.size() == 1) s = gauge_flip(s, f[0], make_atom("toric-code"), make_atom("em-swap"));
    for (int k = 0; k < 3; ++k) {
      std::string what;
      StratifiedSurface n = random_move(s, rng, what);
      if (genus(n) == 1) s = n;
    }
    ASSERT_TRUE(check_anomaly_free(s).ok) << format_surface(s);
    EXPECT_EQ(evaluate(s).gsd_unit, 4) << format_surface(s);
  }
}

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>

#include "disjoint/rota.hpp"
#include "disjoint/rota_io.hpp"

using namespace disjoint;

namespace {

RationalMatrix identity_basis(unsigned n) { return RationalMatrix::identity(n); }

RotaInstance identity_instance(unsigned n, FieldSpec field = FieldSpec::rationals()) {
  return make_instance(field, std::vector<RationalMatrix>(n, identity_basis(n)));
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("disjoint_test_" + name + ".json");
  std::ofstream(path) << text;
  return path.string();
}

std::vector<std::uint64_t> permutation_ranks(unsigned n) {
  std::vector<unsigned> perm(n);
  for (unsigned i = 0; i < n; ++i) perm[i] = i + 1;
  std::vector<std::uint64_t> out;
  do out.push_back(rank_transversal(Transversal(perm)));
  while (std::next_permutation(perm.begin(), perm.end()));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(LoadInstance, ValidFiles) {
  const auto q = load_instance(
      write_temp("q3", R"j({"n":3,"field":"Q","bases":[[[1,0,0],[0,1,0],[0,0,1]],[[1,0,0],[0,1,0],[0,0,1]],)j"
                       R"j([[1,0,0],[0,1,0],[0,0,1]]]})j"));
  EXPECT_EQ(q.n, 3u);
  EXPECT_EQ(q.field, FieldSpec::rationals());

  const auto gf2 = load_instance(write_temp("gf2", R"j({"n":2,"field":"GF(2)","bases":[[[1,0],[0,1]],[[1,0],[0,1]]]})j"));
  EXPECT_EQ(gf2.field, FieldSpec::prime(2));

  const auto fractions =
      load_instance(write_temp("frac", R"j({"n":2,"field":"Q","bases":[[["1/2","0"],[0,"-3/4"]],[[1,1],[1,"2"]]]})j"));
  EXPECT_EQ(fractions.bases[0](1, 1), Rational(-3, 4));
}

TEST(LoadInstance, RejectsNonBasisRow) {
  const auto path = write_temp("bad", R"j({"n":2,"field":"Q","bases":[[[1,0],[0,1]],[[1,0],[1,0]]]})j");
  try {
    load_instance(path);
    FAIL() << "expected an exception";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("row 2 is not a basis"), std::string::npos) << e.what();
  }
}

TEST(LoadInstance, RejectsBadFieldsAndSyntax) {
  EXPECT_THROW(load_instance(write_temp("gf4", R"j({"n":1,"field":"GF(4)","bases":[[[1]]]})j")), std::invalid_argument);
  EXPECT_THROW(load_instance(write_temp("syntax", R"j({"n":1,)j")), std::invalid_argument);
  EXPECT_THROW(load_instance(write_temp("shape", R"j({"n":2,"field":"Q","bases":[[[1,0],[0,1]]]})j")),
               std::invalid_argument);
  EXPECT_THROW(load_instance(write_temp("denom", R"j({"n":1,"field":"GF(3)","bases":[[["1/3"]]]})j")),
               std::invalid_argument);
  EXPECT_THROW(load_instance("/nonexistent/instance.json"), std::invalid_argument);
}

TEST(LoadInstance, JsonRoundTrip) {
  std::mt19937_64 rng(8);
  for (const auto& field : {FieldSpec::rationals(), FieldSpec::prime(7)}) {
    const RotaInstance inst = random_instance(3, field, rng);
    const RotaInstance back = instance_from_json(to_json(inst));
    EXPECT_EQ(back.field, inst.field);
    EXPECT_EQ(back.bases, inst.bases);
  }
}

TEST(BasisTransversals, IdentityInstances) {
  EXPECT_EQ(basis_transversals(identity_instance(2)), (std::vector<std::uint64_t>{1, 2}));
  EXPECT_EQ(basis_transversals(identity_instance(3)), permutation_ranks(3));
  EXPECT_EQ(basis_transversals(identity_instance(4, FieldSpec::prime(3))), permutation_ranks(4));
}

TEST(BasisTransversals, InvariantUnderCoordinateChange) {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<long> entry(-3, 3);
  for (const auto& field : {FieldSpec::rationals(), FieldSpec::prime(5), FieldSpec::prime(2)}) {
    for (int trial = 0; trial < 10; ++trial) {
      const RotaInstance inst = random_instance(3, field, rng);
      RationalMatrix change(3, 3);
      do {
        for (unsigned i = 0; i < 3; ++i)
          for (unsigned j = 0; j < 3; ++j) change(i, j) = Rational(entry(rng));
      } while (rank_over_field(change, field) != 3);
      std::vector<RationalMatrix> moved;
      for (const auto& b : inst.bases) moved.push_back(mat_mul(b, change));
      EXPECT_EQ(basis_transversals(make_instance(field, moved)), basis_transversals(inst)) << field.to_string();
    }
  }
}

TEST(BasisTransversals, Guard) { EXPECT_THROW(basis_transversals(identity_instance(6)), SizeGuardError); }

TEST(PrincipalSubmatrix, Examples) {
  const std::vector<std::uint64_t> pair{1, 2};
  EXPECT_EQ(principal_submatrix(2, pair), (IntMatrix{{0, 1}, {1, 0}}));
  const std::vector<std::uint64_t> single{13};
  EXPECT_EQ(principal_submatrix(3, single), (IntMatrix{{0}}));
  const std::vector<std::uint64_t> bad{27};
  EXPECT_THROW(principal_submatrix(3, bad), std::out_of_range);
}

TEST(PrincipalSubmatrix, PermutationsGiveDerangementRelation) {
  const auto ranks = permutation_ranks(3);
  const IntMatrix sub = principal_submatrix(3, ranks);
  for (std::size_t i = 0; i < ranks.size(); ++i)
    for (std::size_t j = 0; j < ranks.size(); ++j) {
      const auto s = unrank_transversal(3, ranks[i]), t = unrank_transversal(3, ranks[j]);
      bool agree_somewhere = false;
      for (unsigned r = 0; r < 3; ++r) agree_somewhere = agree_somewhere || s.choices[r] == t.choices[r];
      EXPECT_EQ(sub(i, j), agree_somewhere ? 0 : 1);
    }
}

TEST(PrincipalSubmatrix, FullSubsetIsIncidenceMatrix) {
  for (unsigned n = 1; n <= 3; ++n) {
    std::vector<std::uint64_t> all(transversal_count(n));
    for (std::uint64_t r = 0; r < all.size(); ++r) all[r] = r;
    EXPECT_EQ(principal_submatrix(n, all), incidence_matrix(n));
  }
}

TEST(FindArrangement, IdentityGivesCyclicLatinSquare) {
  const auto outcome = find_arrangement(identity_instance(3));
  ASSERT_TRUE(std::holds_alternative<Arrangement>(outcome));
  const auto& a = std::get<Arrangement>(outcome);
  EXPECT_EQ(a.columns, (std::vector<Transversal>{Transversal({1, 2, 3}), Transversal({2, 3, 1}), Transversal({3, 1, 2})}));
  EXPECT_TRUE(verify_arrangement(identity_instance(3), a).ok);
}

TEST(FindArrangement, SmallCases) {
  const auto gf2 = identity_instance(2, FieldSpec::prime(2));
  const auto two = std::get<Arrangement>(find_arrangement(gf2));
  EXPECT_EQ(two.columns, (std::vector<Transversal>{Transversal({1, 2}), Transversal({2, 1})}));

  const auto one = make_instance(FieldSpec::rationals(), {RationalMatrix{{Rational(7)}}});
  EXPECT_EQ(std::get<Arrangement>(find_arrangement(one)).columns, std::vector<Transversal>{Transversal({1})});
}

TEST(FindArrangement, ExhaustedCarriesNodeCount) {
  // Rows that are not bases bypass make_instance; no column can span.
  RotaInstance degenerate{2, FieldSpec::rationals(), {}};
  degenerate.bases.assign(2, RationalMatrix{{Rational(1), Rational(0)}, {Rational(1), Rational(0)}});
  const auto outcome = find_arrangement(degenerate);
  ASSERT_TRUE(std::holds_alternative<Exhausted>(outcome));
  EXPECT_GT(std::get<Exhausted>(outcome).nodes, 0u);
}

TEST(FindArrangement, EveryGf2InstanceOfRankTwo) {
  std::vector<RationalMatrix> bases;
  for (int a = 0; a < 16; ++a) {
    RationalMatrix m{{Rational(a & 1), Rational((a >> 1) & 1)}, {Rational((a >> 2) & 1), Rational((a >> 3) & 1)}};
    if (rank_over_field(m, FieldSpec::prime(2)) == 2) bases.push_back(m);
  }
  ASSERT_EQ(bases.size(), 6u);
  for (const auto& b1 : bases)
    for (const auto& b2 : bases) {
      const auto inst = make_instance(FieldSpec::prime(2), {b1, b2});
      const auto outcome = find_arrangement(inst);
      ASSERT_TRUE(std::holds_alternative<Arrangement>(outcome));
      EXPECT_TRUE(verify_arrangement(inst, std::get<Arrangement>(outcome)).ok);
    }
}

TEST(FindArrangement, RandomInstancesAlwaysSucceedAndVerify) {
  std::mt19937_64 rng(77);
  for (const auto& field : {FieldSpec::prime(2), FieldSpec::prime(3), FieldSpec::rationals()}) {
    for (unsigned n = 1; n <= 3; ++n) {
      for (int trial = 0; trial < 25; ++trial) {
        const RotaInstance inst = random_instance(n, field, rng);
        const auto outcome = find_arrangement(inst);
        ASSERT_TRUE(std::holds_alternative<Arrangement>(outcome)) << field.to_string() << " n=" << n;
        const auto& a = std::get<Arrangement>(outcome);
        EXPECT_TRUE(verify_arrangement(inst, a).ok);

        // the columns are basis transversals forming a clique in the principal submatrix
        const auto ranks = basis_transversals(inst);
        std::vector<std::uint64_t> cols;
        for (const auto& t : a.columns) {
          cols.push_back(rank_transversal(t));
          EXPECT_TRUE(std::binary_search(ranks.begin(), ranks.end(), cols.back()));
        }
        const IntMatrix clique = principal_submatrix(n, cols);
        for (unsigned i = 0; i < n; ++i)
          for (unsigned j = 0; j < n; ++j) EXPECT_EQ(clique(i, j), i == j ? 0 : 1);
      }
    }
  }
}

TEST(FindArrangement, FourDimensionalInstances) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    const RotaInstance inst = random_instance(4, FieldSpec::prime(3), rng);
    const auto outcome = find_arrangement(inst);
    if (const auto* a = std::get_if<Arrangement>(&outcome)) EXPECT_TRUE(verify_arrangement(inst, *a).ok);
  }
  EXPECT_THROW(find_arrangement(identity_instance(6)), SizeGuardError);
}

TEST(VerifyArrangement, Reasons) {
  const auto inst = identity_instance(3);
  const Arrangement repeated{{Transversal({1, 2, 3}), Transversal({1, 2, 3}), Transversal({3, 1, 2})}};
  const auto r1 = verify_arrangement(inst, repeated);
  EXPECT_FALSE(r1.ok);
  EXPECT_NE(std::find_if(r1.reasons.begin(), r1.reasons.end(),
                         [](const std::string& s) { return s.starts_with("columns 1,2 not disjoint"); }),
            r1.reasons.end());

  const auto q2 = identity_instance(2);
  const Arrangement dependent{{Transversal({1, 1}), Transversal({2, 2})}};
  const auto r2 = verify_arrangement(q2, dependent);
  EXPECT_FALSE(r2.ok);
  EXPECT_NE(std::find(r2.reasons.begin(), r2.reasons.end(), "column 1 not a basis"), r2.reasons.end());
  EXPECT_NE(std::find(r2.reasons.begin(), r2.reasons.end(), "column 2 not a basis"), r2.reasons.end());

  EXPECT_FALSE(verify_arrangement(inst, Arrangement{{Transversal({1, 2, 3})}}).ok);
}

TEST(RandomInstance, DeterministicForSeed) {
  std::mt19937_64 a(123), b(123);
  for (int i = 0; i < 5; ++i)
    EXPECT_EQ(random_instance(3, FieldSpec::prime(5), a).bases, random_instance(3, FieldSpec::prime(5), b).bases);
}

// Copyright 2026 The qsprep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qsprep/sparse_state.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include "qsprep/errors.hpp"
#include "qsprep/state_vector.hpp"
#include "test_util.hpp"

namespace qsprep {
namespace {

SparseState two_entry_state(double weight_first) {
  SparseState s;
  s.n_qubits = 4;
  s.entries.push_back({"0101", cdouble{std::sqrt(weight_first), 0.0}});
  s.entries.push_back({"1010", cdouble{std::sqrt(1.0 - weight_first), 0.0}});
  return s;
}

SparseState random_sparse(int n_qubits, std::uint64_t seed) {
  return from_state_vector(testutil::random_state(n_qubits, seed));
}

TEST(SparseFormTest, ValidationCatchesWidthDuplicateAndNormProblems) {
  SparseState bad_width;
  bad_width.n_qubits = 3;
  bad_width.entries.push_back({"11", cdouble{1.0, 0.0}});
  EXPECT_THROW(validate_sparse_state(bad_width), input_error);

  SparseState dup;
  dup.n_qubits = 2;
  dup.entries.push_back({"01", cdouble{0.6, 0.0}});
  dup.entries.push_back({"01", cdouble{0.8, 0.0}});
  EXPECT_THROW(validate_sparse_state(dup), input_error);

  SparseState unnormalized;
  unnormalized.n_qubits = 2;
  unnormalized.entries.push_back({"01", cdouble{0.5, 0.0}});
  EXPECT_THROW(validate_sparse_state(unnormalized), input_error);
  EXPECT_NO_THROW(validate_sparse_state(unnormalized, /*check_norm=*/false));
  normalize_sparse_state(unnormalized);
  EXPECT_NO_THROW(validate_sparse_state(unnormalized));
}

TEST(SparseFormTest, VectorRoundTripDropsOnlyAmplitudesBelowTheCutoff) {
  StateVector vec(3);
  vec.amps[1] = cdouble{0.8, 0.0};
  vec.amps[5] = cdouble{0.0, 0.6};
  vec.amps[7] = cdouble{1e-13, 0.0};  // below the default cutoff

  const SparseState sparse = from_state_vector(vec);
  ASSERT_EQ(sparse.entries.size(), 2u);
  EXPECT_EQ(sparse.entries[0].pattern, "001");
  EXPECT_EQ(sparse.entries[1].pattern, "101");

  const StateVector back = to_state_vector(sparse);
  EXPECT_EQ(back.amps[1], vec.amps[1]);
  EXPECT_EQ(back.amps[5], vec.amps[5]);
  EXPECT_EQ(back.amps[7], cdouble(0.0, 0.0));
}

TEST(SparseFormTest, JsonRoundTripPreservesEntriesAndMetadata) {
  SparseState s = two_entry_state(0.7);
  s.metadata = nlohmann::ordered_json{{"ordering", "interleaved"}, {"note", 42}};

  const SparseState back = sparse_from_json(sparse_to_json(s));
  EXPECT_EQ(back.n_qubits, s.n_qubits);
  ASSERT_EQ(back.entries.size(), s.entries.size());
  for (size_t i = 0; i < s.entries.size(); ++i) {
    EXPECT_EQ(back.entries[i].pattern, s.entries[i].pattern);
    EXPECT_EQ(back.entries[i].amplitude, s.entries[i].amplitude);
  }
  EXPECT_EQ(back.metadata, s.metadata);

  EXPECT_THROW(sparse_from_json(nlohmann::ordered_json::array()), input_error);
  EXPECT_THROW(sparse_from_json(nlohmann::ordered_json{{"n_qubits", 2}}), input_error);
}

TEST(SparseFormTest, TextRoundTripAndCommentHandling) {
  const std::string text =
      "# two-determinant example\n"
      "n=4\n"
      "\n"
      "0101 0.6 0.0  # dominant\n"
      "1010 0.0 -0.8\n";
  const SparseState s = sparse_from_text(text);
  EXPECT_EQ(s.n_qubits, 4);
  ASSERT_EQ(s.entries.size(), 2u);
  EXPECT_EQ(s.entries[0].amplitude, cdouble(0.6, 0.0));
  EXPECT_EQ(s.entries[1].amplitude, cdouble(0.0, -0.8));

  const SparseState back = sparse_from_text(sparse_to_text(s));
  ASSERT_EQ(back.entries.size(), 2u);
  EXPECT_EQ(back.entries[1].pattern, "1010");
  EXPECT_EQ(back.entries[1].amplitude, s.entries[1].amplitude);
}

TEST(SparseFormTest, TextParserReportsTheOffendingLine) {
  try {
    sparse_from_text("n=4\n0101 0.5\n");
    FAIL() << "expected input_error";
  } catch (const input_error &e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
  try {
    sparse_from_text("qubits: 4\n");
    FAIL() << "expected input_error";
  } catch (const input_error &e) {
    EXPECT_NE(std::string(e.what()).find("line 1"), std::string::npos) << e.what();
  }
  EXPECT_THROW(sparse_from_text("# nothing but comments\n"), input_error);
}

TEST(SparseFormTest, LoaderSniffsJsonAndTextByLeadingByte) {
  const SparseState s = two_entry_state(0.9);
  const std::string dir = ::testing::TempDir();
  const std::string json_path = dir + "state_roundtrip.json";
  const std::string text_path = dir + "state_roundtrip.txt";
  save_sparse_state(json_path, s);
  write_file_atomic(text_path, sparse_to_text(s));

  for (const auto &path : {json_path, text_path}) {
    const SparseState loaded = load_sparse_state(path);
    ASSERT_EQ(loaded.entries.size(), s.entries.size());
    EXPECT_EQ(loaded.entries[0].pattern, s.entries[0].pattern);
    EXPECT_NEAR(std::abs(loaded.entries[0].amplitude - s.entries[0].amplitude), 0.0, 1e-15);
  }

  const std::string broken = dir + "state_broken.json";
  write_file_atomic(broken, "{\"n_qubits\": 2,");
  EXPECT_THROW(load_sparse_state(broken), input_error);
}

TEST(TruncationTest, KeepOneProjectsOntoTheDominantPattern) {
  const SparseState s = two_entry_state(0.9);
  const TruncationResult r = truncate_keep(s, 1);
  ASSERT_EQ(r.state.entries.size(), 1u);
  EXPECT_EQ(r.state.entries[0].pattern, "0101");
  EXPECT_NEAR(std::abs(r.state.entries[0].amplitude), 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(r.fidelity_vs_original, 0.9);
}

TEST(TruncationTest, KeepingEverythingIsTheIdentity) {
  const SparseState s = two_entry_state(0.7);
  for (size_t keep : {size_t{2}, size_t{5}}) {
    const TruncationResult r = truncate_keep(s, keep);
    EXPECT_DOUBLE_EQ(r.fidelity_vs_original, 1.0);
    ASSERT_EQ(r.state.entries.size(), s.entries.size());
    EXPECT_EQ(r.state.entries[1].amplitude, s.entries[1].amplitude);
  }
  EXPECT_THROW(truncate_keep(s, 0), input_error);
}

TEST(TruncationTest, EqualMagnitudesBreakTiesLexicographically) {
  SparseState s;
  s.n_qubits = 2;
  const double a = 1.0 / std::sqrt(2.0);
  s.entries.push_back({"10", cdouble{a, 0.0}});
  s.entries.push_back({"01", cdouble{-a, 0.0}});
  const TruncationResult r = truncate_keep(s, 1);
  ASSERT_EQ(r.state.entries.size(), 1u);
  EXPECT_EQ(r.state.entries[0].pattern, "01");
}

TEST(TruncationTest, FidelityMatchesTheDirectOverlapComputation) {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const SparseState s = random_sparse(6, seed);
    const StateVector original = to_state_vector(s);
    for (size_t keep = 1; keep < s.entries.size(); keep += 7) {
      const TruncationResult r = truncate_keep(s, keep);
      const double direct = fidelity(to_state_vector(r.state), original);
      EXPECT_NEAR(r.fidelity_vs_original, direct, 1e-12);
    }
  }
}

TEST(TruncationTest, FidelityIsMonotoneInTheKeptCount) {
  const SparseState s = random_sparse(5, 11);
  double previous = 0.0;
  for (size_t keep = 1; keep <= s.entries.size(); ++keep) {
    const TruncationResult r = truncate_keep(s, keep);
    EXPECT_GE(r.fidelity_vs_original, previous - 1e-15);
    previous = r.fidelity_vs_original;
  }
  EXPECT_DOUBLE_EQ(previous, 1.0);
}

TEST(TruncationTest, ThresholdKeepsEverythingAboveItOrTheSingleLargest) {
  const SparseState s = two_entry_state(0.9);  // magnitudes ~0.9487, ~0.3162
  const TruncationResult both = truncate_threshold(s, 0.1);
  EXPECT_EQ(both.state.entries.size(), 2u);
  const TruncationResult one = truncate_threshold(s, 0.5);
  ASSERT_EQ(one.state.entries.size(), 1u);
  EXPECT_EQ(one.state.entries[0].pattern, "0101");
  // A threshold above every magnitude still returns a usable state.
  const TruncationResult fallback = truncate_threshold(s, 0.99);
  EXPECT_EQ(fallback.state.entries.size(), 1u);
  EXPECT_THROW(truncate_threshold(s, 0.0), input_error);
  EXPECT_THROW(truncate_threshold(s, 1.0), input_error);
}

TEST(SpectrumTest, SingleDeterminantIsOneRowEndingAtOne) {
  SparseState s;
  s.n_qubits = 3;
  s.entries.push_back({"010", cdouble{0.0, 1.0}});
  const auto rows = spectrum(s);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].rank, 1);
  EXPECT_DOUBLE_EQ(rows[0].abs_c, 1.0);
  EXPECT_DOUBLE_EQ(rows[0].cum_weight, 1.0);
}

TEST(SpectrumTest, UniformFourDeterminantStateStepsByQuarters) {
  SparseState s;
  s.n_qubits = 2;
  for (const char *p : {"00", "01", "10", "11"}) {
    s.entries.push_back({p, cdouble{0.5, 0.0}});
  }
  const auto rows = spectrum(s);
  ASSERT_EQ(rows.size(), 4u);
  for (size_t k = 0; k < 4; ++k) {
    EXPECT_EQ(rows[k].rank, static_cast<int>(k) + 1);
    EXPECT_DOUBLE_EQ(rows[k].abs_c, 0.5);
    EXPECT_NEAR(rows[k].cum_weight, 0.25 * static_cast<double>(k + 1), 1e-15);
  }
}

TEST(SpectrumTest, CumulativeWeightIsMonotoneAndPermutationInvariant) {
  SparseState s = random_sparse(6, 23);
  const auto rows = spectrum(s);
  double previous = 0.0;
  for (const auto &row : rows) {
    EXPECT_GE(row.cum_weight, previous);
    previous = row.cum_weight;
  }
  EXPECT_NEAR(rows.back().cum_weight, 1.0, 1e-10);

  SparseState shuffled = s;
  std::mt19937 gen(7);
  std::shuffle(shuffled.entries.begin(), shuffled.entries.end(), gen);
  const auto rows2 = spectrum(shuffled);
  ASSERT_EQ(rows2.size(), rows.size());
  for (size_t k = 0; k < rows.size(); ++k) {
    EXPECT_DOUBLE_EQ(rows2[k].abs_c, rows[k].abs_c);
    EXPECT_DOUBLE_EQ(rows2[k].cum_weight, rows[k].cum_weight);
  }
}

TEST(SpectrumTest, CsvUsesThePinnedColumnHeader) {
  SparseState s;
  s.n_qubits = 1;
  s.entries.push_back({"1", cdouble{1.0, 0.0}});
  const std::string csv = spectrum_to_csv(spectrum(s));
  EXPECT_EQ(csv.rfind("rank,abs_c,cum_weight\n", 0), 0u) << csv;
  EXPECT_NE(csv.find("1,1,1\n"), std::string::npos) << csv;
}

TEST(SymmetryTest, UniformSectorIsReported) {
  SparseState s;
  s.n_qubits = 4;
  s.entries.push_back({"1100", cdouble{1.0, 0.0}});
  SymmetryReport r = symmetry(s);
  ASSERT_TRUE(r.particle_number.has_value());
  EXPECT_EQ(*r.particle_number, 2);
  ASSERT_TRUE(r.sz.has_value());
  EXPECT_DOUBLE_EQ(*r.sz, 0.0);

  s.entries.push_back({"0011", cdouble{0.6, 0.0}});
  r = symmetry(s);
  EXPECT_EQ(*r.particle_number, 2);
  EXPECT_DOUBLE_EQ(*r.sz, 0.0);
}

TEST(SymmetryTest, MixedSectorsAreReportedIndependently) {
  SparseState mixed_n;
  mixed_n.n_qubits = 4;
  mixed_n.entries.push_back({"1000", cdouble{1.0, 0.0}});  // N=1, Sz=+1/2
  mixed_n.entries.push_back({"1100", cdouble{0.6, 0.0}});  // N=2, Sz=0
  SymmetryReport r = symmetry(mixed_n);
  EXPECT_FALSE(r.particle_number.has_value());
  EXPECT_FALSE(r.sz.has_value());

  SparseState mixed_n_same_sz;
  mixed_n_same_sz.n_qubits = 4;
  mixed_n_same_sz.entries.push_back({"1000", cdouble{1.0, 0.0}});  // N=1, Sz=+1/2
  mixed_n_same_sz.entries.push_back({"1110", cdouble{0.6, 0.0}});  // N=3, Sz=+1/2
  r = symmetry(mixed_n_same_sz);
  EXPECT_FALSE(r.particle_number.has_value());
  ASSERT_TRUE(r.sz.has_value());
  EXPECT_DOUBLE_EQ(*r.sz, 0.5);
}

TEST(SymmetryTest, OddRegisterWidthNeverReportsSz) {
  SparseState s;
  s.n_qubits = 3;
  s.entries.push_back({"111", cdouble{1.0, 0.0}});
  const SymmetryReport r = symmetry(s);
  ASSERT_TRUE(r.particle_number.has_value());
  EXPECT_EQ(*r.particle_number, 3);
  EXPECT_FALSE(r.sz.has_value());
}

}  // namespace
}  // namespace qsprep

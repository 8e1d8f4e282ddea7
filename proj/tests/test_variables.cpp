#include <gtest/gtest.h>

#include "vnd/csv.hpp"
#include "vnd/dataset.hpp"
#include "vnd/error.hpp"
#include "vnd/variables.hpp"

using namespace vnd;

namespace {

std::vector<Cell> cells(std::initializer_list<const char*> values) {
  std::vector<Cell> out;
  for (const char* v : values) out.push_back(v ? Cell(v) : std::nullopt);
  return out;
}

}  // namespace

TEST(InferKind, Numeric) {
  EXPECT_EQ(infer_kind(cells({"1.5", "2", "3"})).kind, VariableKind::Numeric);
}

TEST(InferKind, CategoricalSorted) {
  const auto k = infer_kind(cells({"US", "Europe", "Japan", "US"}));
  EXPECT_EQ(k.kind, VariableKind::Categorical);
  EXPECT_EQ(k.categories, (std::vector<std::string>{"Europe", "Japan", "US"}));
}

TEST(InferKind, MixedIsCategorical) {
  EXPECT_EQ(infer_kind(cells({"1", "x", "3"})).kind, VariableKind::Categorical);
}

TEST(InferKind, MissingIgnoredButAllMissingFails) {
  EXPECT_EQ(infer_kind(cells({"1", nullptr, "3"})).kind, VariableKind::Numeric);
  try {
    infer_kind(cells({nullptr, nullptr}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::AllMissing);
  }
}

TEST(InferKind, CategoricalMissingGetsOwnCategory) {
  const auto k = infer_kind(cells({"a", nullptr, "b"}));
  EXPECT_EQ(k.kind, VariableKind::Categorical);
  EXPECT_EQ(k.categories.size(), 3u);
  EXPECT_NE(std::find(k.categories.begin(), k.categories.end(), kMissingCategory), k.categories.end());
}

TEST(LogScale, Examples) {
  EXPECT_FALSE(detect_log_scale(std::vector<double>{1, 2, 3, 4, 5}));
  // mean 2001.2 > 3 * median 2: heavy tail.
  EXPECT_TRUE(detect_log_scale(std::vector<double>{1, 1, 2, 2, 10000}));
  EXPECT_FALSE(detect_log_scale(std::vector<double>{-1, 10, 10000}));
  EXPECT_FALSE(detect_log_scale(std::vector<double>{0, 10, 10000}));
}

TEST(LogScale, UpperQuartileRule) {
  // median 3 and mean 202 < 3 * 3 is false; max 1000 > 100 * Q75(4) is true.
  std::vector<double> v{1, 2, 3, 4, 4, 4, 1000};
  EXPECT_TRUE(detect_log_scale(v));
}

class AutoTable : public ::testing::Test {
 protected:
  RawTable table = load_csv(
      "Name,MPG,Origin,One\n"
      "a,18,US,k\n"
      "b,24,Japan,k\n"
      "c,,Europe,k\n"
      "d,30,US,k\n");
  std::vector<VariableSpec> specs = infer_specs(table);
};

TEST_F(AutoTable, InferredSpecs) {
  ASSERT_EQ(specs.size(), 4u);
  EXPECT_EQ(find_spec(specs, "Name").kind, VariableKind::Categorical);
  const auto& mpg = find_spec(specs, "MPG");
  EXPECT_EQ(mpg.kind, VariableKind::Numeric);
  EXPECT_DOUBLE_EQ(mpg.scaleMin, 18.0);
  EXPECT_DOUBLE_EQ(mpg.scaleMax, 30.0);
  EXPECT_FALSE(mpg.isTarget);
  EXPECT_TRUE(find_spec(specs, "One").degenerate);
}

TEST_F(AutoTable, ForkOrigin) {
  const auto children = fork_categorical(find_spec(specs, "Origin"), table);
  ASSERT_EQ(children.size(), 3u);
  EXPECT_EQ(children[0].name, "Origin=Europe");
  for (const auto& c : children) {
    EXPECT_EQ(c.kind, VariableKind::BinaryFork);
    EXPECT_EQ(c.sourceVariable, "Origin");
  }
}

TEST_F(AutoTable, ForkSingleCategoryIsDegenerate) {
  const auto children = fork_categorical(find_spec(specs, "One"), table);
  ASSERT_EQ(children.size(), 1u);
  EXPECT_TRUE(children[0].degenerate);
}

TEST_F(AutoTable, ForkNumericRejected) {
  try {
    fork_variable(specs, table, "MPG");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotCategorical);
  }
}

TEST_F(AutoTable, ForkedChildAsTargetIsBinary) {
  fork_variable(specs, table, "Origin");
  EXPECT_FALSE(find_spec(specs, "Origin").enabled);
  set_target(specs, "Origin=US");
  const Dataset d = normalize(table, specs);
  EXPECT_EQ(d.target(), (std::vector<double>{1, 0, 0, 1}));
  // Sibling forks are inputs; in every row exactly one sibling or the target is 1.
  for (std::size_t n = 0; n < d.size(); ++n) {
    double sum = d.target()[n];
    for (std::size_t k = 0; k < d.inputCount(); ++k) {
      if (d.inputNames()[k].rfind("Origin=", 0) == 0) sum += d.value(n, k);
    }
    EXPECT_DOUBLE_EQ(sum, 1.0);
  }
}

TEST_F(AutoTable, ForkTwiceReplacesChildren) {
  fork_variable(specs, table, "Origin");
  const auto size = specs.size();
  fork_variable(specs, table, "Origin");
  EXPECT_EQ(specs.size(), size);
}

TEST_F(AutoTable, TargetSwitchClearsPrevious) {
  set_target(specs, "MPG");
  set_target(specs, "Origin");
  EXPECT_FALSE(find_spec(specs, "MPG").isTarget);
  EXPECT_TRUE(find_spec(specs, "Origin").isTarget);
}

TEST_F(AutoTable, TargetCannotBeDisabled) {
  set_target(specs, "MPG");
  try {
    set_enabled(specs, "MPG", false);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TargetLocked);
  }
}

TEST_F(AutoTable, UnknownVariable) {
  try {
    set_enabled(specs, "Nope", false);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownVariable);
  }
}

TEST(ParseReal, FiniteOnly) {
  EXPECT_EQ(parse_real("2.5"), 2.5);
  EXPECT_EQ(parse_real("-1e3"), -1000.0);
  EXPECT_FALSE(parse_real("inf"));
  EXPECT_FALSE(parse_real("1.2.3"));
  EXPECT_FALSE(parse_real(""));
}

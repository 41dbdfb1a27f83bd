#include <gtest/gtest.h>

#include "fpx_cli/group_spec.hpp"
#include "fpx_cli/report.hpp"
#include "fpx_cli/suites.hpp"

using namespace fpx;
using namespace fpx::cli;

namespace {

const char* kZ2Z3 = R"({"factors": [{"kind": "cyclic", "order": 2, "label": "Z2"},
                                     {"kind": "cyclic", "order": 3, "label": "Z3"}],
                        "aliases": {"a": "0:1", "b": "1:1"}})";

}  // namespace

TEST(GroupSpecFile, ParsesKindsAndAliases) {
  const auto spec = parseGroupSpec(kZ2Z3);
  EXPECT_EQ(spec.group.factorCount(), 2u);
  EXPECT_EQ(parseWordLiteral(spec, "a b"), spec.group.parseWord("0:1 1:1"));
  EXPECT_FALSE(spec.hasInfiniteFactor());
  const auto z = parseGroupSpec(R"({"factors": [{"kind": "zwindow", "bound": 3}, {"kind": "table", "table": [[0,1],[1,0]]}]})");
  EXPECT_TRUE(z.hasInfiniteFactor());
  EXPECT_EQ(z.group.factor(0).label(), "F0");
}

TEST(GroupSpecFile, RejectsMalformedInput) {
  for (const char* bad : {"", "[]", "{}", R"({"factors": []})", R"({"factors": [{"kind": "cyclic"}]})",
                          R"({"factors": [{"kind": "cyclic", "order": 1}]})",
                          R"({"factors": [{"kind": "weird", "order": 2}]})",
                          R"({"factors": [{"kind": "table", "table": [[0,1],[1,1]]}]})",
                          R"({"factors": [{"kind": "cyclic", "order": 2, "label": "X"}, {"kind": "cyclic", "order": 3, "label": "X"}]})",
                          R"({"factors": [{"kind": "cyclic", "order": 2}], "aliases": {"a": "0:1 0:1"}})",
                          R"({"factors": [{"kind": "cyclic", "order": 2}], "aliases": {"a": "3:1"}})"})
    EXPECT_THROW(parseGroupSpec(bad), SpecError) << bad;
  EXPECT_THROW(loadGroupSpec("/nonexistent/spec.json"), SpecError);
  EXPECT_THROW(parseWordLiteral(parseGroupSpec(kZ2Z3), "a a"), SpecError);
}

TEST(ReportFormat, RoundingAndCsv) {
  EXPECT_EQ(round12(1.0 / 3.0), 0.333333333333);
  EXPECT_EQ(format12(0.1 + 0.2), "0.3");
  std::vector<StudyRow> rows{{2, 1, 1.0, 1.0, StudyMode::Matrix}, {3, 2, 1.0 / 3.0, 0.5, StudyMode::Analytic}};
  EXPECT_EQ(renderCsv(rows), "n,m,defect,bound,mode\n2,1,1,1,matrix\n3,2,0.333333333333,0.5,analytic\n");
}

TEST(ReportFormat, StatusFollowsMetricsAndStrictSkips) {
  SuiteResult s;
  s.name = "x";
  s.metrics.push_back(Metric::atMost("a", 1e-12, 1e-10));
  s.metrics.push_back(Metric::exceeds("b", 0.5, 1e-10));
  s.metrics.push_back(Metric::equals("c", 6.0, 6.0));
  EXPECT_TRUE(s.passed(true));
  s.skips.push_back("too big");
  EXPECT_TRUE(s.passed(false));
  EXPECT_FALSE(s.passed(true));
  s.metrics.push_back(Metric::atMost("nan", std::nan(""), 1.0));
  EXPECT_FALSE(s.passed(false));

  Report r;
  r.command = "verify";
  r.suites.push_back(s);
  const auto text = renderJson(r);
  EXPECT_NE(text.find("\"suiteName\": \"x\""), std::string::npos);
  EXPECT_NE(text.find("\"status\": \"fail\""), std::string::npos);
  EXPECT_EQ(text.find("timing_ms"), std::string::npos);
  EXPECT_EQ(text, renderJson(r));
}

TEST(Suites, CellsKeepOrderAcrossJobs) {
  std::vector<std::function<CellOutput()>> cells;
  for (int i = 0; i < 40; ++i)
    cells.push_back([i]() {
      CellOutput c;
      c.metrics.push_back(Metric::atMost(std::to_string(i), i, 100));
      return c;
    });
  const auto a = runCells(cells, 1);
  const auto b = runCells(cells, 4);
  for (int i = 0; i < 40; ++i) EXPECT_EQ(a[static_cast<std::size_t>(i)].metrics[0].name, b[static_cast<std::size_t>(i)].metrics[0].name);
  cells.push_back([]() -> CellOutput { throw SpecError("boom"); });
  EXPECT_THROW(runCells(cells, 3), SpecError);
}

TEST(Suites, DeterministicAndFaultSensitive) {
  const auto spec = parseGroupSpec(kZ2Z3);
  SuiteOptions opts;
  opts.seed = 7;
  const auto one = runSuites("jpattern", spec, opts);
  opts.jobs = 3;
  const auto two = runSuites("jpattern", spec, opts);
  Report r1, r2;
  r1.suites = one;
  r2.suites = two;
  EXPECT_EQ(renderJson(r1), renderJson(r2));
  EXPECT_TRUE(r1.passed());

  opts.injectFault = "coeff";
  const auto bad = runSuites("coeff", spec, opts);
  EXPECT_FALSE(bad.front().passed(false));
  opts.injectFault = "nope";
  EXPECT_THROW(runSuites("coeff", spec, opts), SpecError);
  EXPECT_THROW(runSuites("unknown", spec, SuiteOptions{}), SpecError);
  EXPECT_EQ(testWords(spec.group, 0, 3, 64, 20, 1).size(), 14u);
}

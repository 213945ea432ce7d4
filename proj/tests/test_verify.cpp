#include "qs2/error.hpp"
#include "qs2/verify.hpp"

#include <gtest/gtest.h>

#include <cstdlib>

using namespace qs2;

namespace {

const Truncation kSmall{2, 2};

} // namespace

TEST(Verify, Names)
{
    ASSERT_EQ(check_names().size(), 15u);
    EXPECT_EQ(check_names().front(), "C1");
    EXPECT_EQ(check_names().back(), "C15");
    for (const auto& n : check_names())
        EXPECT_FALSE(check_identity(n).empty());
    EXPECT_THROW(check_identity("C16"), ContractError);
    EXPECT_THROW(run_suite({"C2", "nope"}), ContractError);
    EXPECT_THROW(parse_selection("C1,X"), ContractError);
    EXPECT_EQ(parse_selection("all"), check_names());
    EXPECT_EQ(parse_selection("C3,C1"), (std::vector<std::string>{"C3", "C1"}));
}

TEST(Verify, SuiteOrderAndDuplicates)
{
    auto r = run_suite({"C10", "C2", "C2"}, kSmall);
    ASSERT_EQ(r.size(), 2u);
    EXPECT_EQ(r[0].name, "C2");
    EXPECT_EQ(r[1].name, "C10");
}

TEST(Verify, FastChecksPass)
{
    auto results = run_suite({"C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10", "C11", "C13"}, kSmall);
    for (const auto& r : results) {
        EXPECT_TRUE(r.ok()) << r.name << ": " << r.witness.value_or("");
        EXPECT_FALSE(r.witness.has_value()) << r.name;
    }
    EXPECT_EQ(results[0].status, CheckStatus::pass);      // C2 is not truncation-quantified
    EXPECT_EQ(results[2].status, CheckStatus::bounded_pass);  // C4 is
}

TEST(Verify, CapDisplaysCarryTypoNote)
{
    auto r = run_suite({"C9"}, kSmall);
    ASSERT_EQ(r.size(), 1u);
    EXPECT_EQ(r[0].status, CheckStatus::pass);
    ASSERT_FALSE(r[0].notes.empty());
    EXPECT_NE(r[0].notes[0].find("stray 1"), std::string::npos);
}

TEST(Verify, SlowChecksOnSmallBox)
{
    Truncation t{1, 1};
    for (const auto& r : run_suite({"C1", "C12", "C14", "C15"}, t)) {
        EXPECT_EQ(r.status, CheckStatus::bounded_pass) << r.name << ": " << r.witness.value_or("");
    }
}

TEST(Verify, ReportsAreDeterministic)
{
    auto a = run_suite({"C2", "C9", "C12"}, {1, 1});
    auto b = run_suite({"C2", "C9", "C12"}, {1, 1});
    for (ReportFormat f : {ReportFormat::markdown, ReportFormat::json})
        EXPECT_EQ(emit_report(a, f, {1, 1}), emit_report(b, f, {1, 1}));
    std::string md = emit_report(a, ReportFormat::markdown, {1, 1});
    EXPECT_NE(md.find("3/3 checks passed"), std::string::npos);
    EXPECT_NE(md.find("| C9 | pass |"), std::string::npos);
    std::string js = emit_report(a, ReportFormat::json, {1, 1});
    EXPECT_NE(js.find("\"summary\": \"3/3\""), std::string::npos);
    EXPECT_EQ(js.find("runtime_ms"), std::string::npos);
    EXPECT_NE(emit_report(a, ReportFormat::json, {1, 1}, true).find("runtime_ms"), std::string::npos);
}

TEST(Verify, EmptyAndFailingReports)
{
    EXPECT_EQ(emit_report({}, ReportFormat::markdown, {}), "");
    EXPECT_TRUE(all_ok({}));
    CheckResult bad;
    bad.name = "C2";
    bad.identity = check_identity("C2");
    bad.status = CheckStatus::fail;
    bad.witness = "b(dA) = (1)*x0";
    std::string md = emit_report({bad}, ReportFormat::markdown, {});
    EXPECT_NE(md.find("| C2 | fail |"), std::string::npos);
    EXPECT_NE(md.find("witness: b(dA) = (1)*x0"), std::string::npos);
    EXPECT_NE(md.find("0/1 checks passed"), std::string::npos);
    EXPECT_FALSE(all_ok({bad}));
}

TEST(Verify, Truncation)
{
    Truncation t = parse_truncation("4,2");
    EXPECT_EQ(t.max_i, 4);
    EXPECT_EQ(t.max_j, 2);
    EXPECT_THROW(parse_truncation("4"), ParseError);
    EXPECT_THROW(parse_truncation("-1,2"), ParseError);
    EXPECT_THROW(parse_truncation("1,x"), ParseError);
    ::setenv("QS2_TRUNCATION", "2,1", 1);
    EXPECT_EQ(truncation_from_env().max_i, 2);
    EXPECT_EQ(truncation_from_env().max_j, 1);
    ::setenv("QS2_TRUNCATION", "junk", 1);
    EXPECT_EQ(truncation_from_env().max_i, 3);
    ::unsetenv("QS2_TRUNCATION");
    EXPECT_EQ(truncation_from_env({5, 6}).max_j, 6);
}

TEST(Verify, StatusNames)
{
    EXPECT_EQ(status_name(CheckStatus::pass), "pass");
    EXPECT_EQ(status_name(CheckStatus::bounded_pass), "bounded-pass");
    EXPECT_EQ(status_name(CheckStatus::pass_with_notes), "pass-with-notes");
    EXPECT_EQ(status_name(CheckStatus::fail), "fail");
}

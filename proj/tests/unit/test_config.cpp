#include <gtest/gtest.h>

#include <sstream>

#include "scp/config.hpp"
#include "scp/errors.hpp"

using namespace scp;

namespace {

RunConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

ErrorKind kind_of(const std::string& text, std::string* message = nullptr) {
  try {
    parse(text);
  } catch (const Error& e) {
    if (message != nullptr) *message = e.what();
    return e.kind();
  }
  ADD_FAILURE() << "no error for: " << text;
  return ErrorKind::domain;
}

}  // namespace

TEST(Config, Defaults) {
  const RunConfig cfg = parse("");
  EXPECT_EQ(cfg.rep_name, "delta");
  EXPECT_EQ(cfg.table_bound, 10000);
  EXPECT_EQ(cfg.output_format, OutputFormat::json);
  EXPECT_EQ(cfg.threads, 1u);
  EXPECT_FALSE(cfg.deterministic);
  EXPECT_DOUBLE_EQ(cfg.afe.kernel_width, 1.0);
  EXPECT_DOUBLE_EQ(cfg.afe.contour_sigma, 1.5);
}

TEST(Config, CommentsBlankLinesAndOverrides) {
  const RunConfig cfg = parse(
      "# run settings\n"
      "\n"
      "rep_name = sym2   # inline note\n"
      "table_bound=1000000\n"
      "output_format=csv\n"
      "threads=4\n"
      "deterministic=yes\n"
      "kernel_width=2\n"
      "cutoff_multiplier=1.5\n");
  EXPECT_EQ(cfg.rep_name, "sym2");
  EXPECT_EQ(cfg.table_bound, 1000000);
  EXPECT_EQ(cfg.output_format, OutputFormat::csv);
  EXPECT_EQ(cfg.threads, 4u);
  EXPECT_TRUE(cfg.deterministic);
  EXPECT_DOUBLE_EQ(cfg.afe.kernel_width, 2.0);
  EXPECT_DOUBLE_EQ(cfg.afe.cutoff_multiplier, 1.5);
}

TEST(Config, TableCeilingIsAResourceError) {
  EXPECT_EQ(kind_of("table_bound=1000001\n"), ErrorKind::resource);
  EXPECT_EQ(exit_code_for(ErrorKind::resource), 2);
}

TEST(Config, UnknownKeyNamesTheLine) {
  std::string message;
  EXPECT_EQ(kind_of("threads=2\n# ok\nwidget=3\n", &message), ErrorKind::parse);
  EXPECT_NE(message.find("line 3"), std::string::npos) << message;
  EXPECT_EQ(exit_code_for(ErrorKind::parse), 1);
}

TEST(Config, MalformedValues) {
  EXPECT_EQ(kind_of("threads=two\n"), ErrorKind::parse);
  EXPECT_EQ(kind_of("deterministic=maybe\n"), ErrorKind::parse);
  EXPECT_EQ(kind_of("output_format=xml\n"), ErrorKind::parse);
  EXPECT_EQ(kind_of("no equals sign\n"), ErrorKind::parse);
  EXPECT_THROW(parse("rep_name=sym9\n"), Error);
}

TEST(OutputFormat, RoundTripNames) {
  for (auto f : {OutputFormat::json, OutputFormat::csv, OutputFormat::dat}) {
    EXPECT_EQ(parse_output_format(output_format_name(f)), f);
  }
}

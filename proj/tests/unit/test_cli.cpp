#include <gtest/gtest.h>

#include <sstream>

#include "qsos/cli/commands.hpp"

using namespace qsos;
using namespace qsos::cli;

namespace {

struct JobRun {
  int code;
  std::string out, err;
};

JobRun run_job(const std::string& command, const std::string& input, Mode mode = Mode::floating, bool as_json = true,
            int max_retries = 3) {
  JobSpec job;
  job.command = command;
  job.input = json::parse(input);
  job.mode = mode;
  job.json_output = as_json;
  job.max_retries = max_retries;
  std::ostringstream out, err;
  int code = run(job, out, err);
  return {code, out.str(), err.str()};
}

const char* kExample =
    R"({"monomials":{"004":"1","202":"1","112":"-1","022":"1","211":"1","031":"-1","400":"1","040":"1"}})";

}  // namespace

TEST(JsonIo, ExactQuarticRoundTrip) {
  json in = json::parse(R"({"monomials":{"400":"1/3","310":"-2","004":"7/5","112":"5"}})");
  EXPECT_EQ(to_json(parse_exact_ternary(in, 4)), in);
}

TEST(JsonIo, FloatQuarticRoundTrip) {
  json in = json::parse(R"({"monomials":{"400":0.1,"031":-2.5e-7,"004":1.0000000000000002}})");
  json back = to_json(parse_float_ternary(in, 4));
  EXPECT_EQ(back, in);
  EXPECT_EQ(json::parse(back.dump()), in);
}

TEST(JsonIo, BinaryPencilAndTripleRoundTrip) {
  json pencil = json::parse(R"({"f2":[1.0,-1.0,1.0],"f3":[0.0,1.0,0.0,-1.0],"f4":[1.0,0.0,0.0,0.0,1.0]})");
  EXPECT_EQ(to_json(parse_pencil(pencil)), pencil);
  json rf = json::parse(R"(["1","-1/2","0"])");
  EXPECT_EQ(to_json(parse_exact_binary(rf, 2)), rf);
  json triple = json::parse(R"([{"monomials":{"200":1.5}},{"monomials":{"011":-2.0}},{"monomials":{}}])");
  EXPECT_EQ(to_json(parse_float_triple(triple)), triple);
}

TEST(JsonIo, SchemaErrors) {
  EXPECT_THROW(parse_exact_ternary(json::parse(R"({"monomials":{"400":0.5}})"), 4), SchemaError);
  EXPECT_THROW(parse_float_ternary(json::parse(R"({"monomials":{"300":1}})"), 4), SchemaError);
  EXPECT_THROW(parse_float_ternary(json::parse(R"({"coeffs":{}})"), 4), SchemaError);
  EXPECT_THROW(parse_float_binary(json::parse("[1, 2]"), 2), SchemaError);
  EXPECT_THROW(parse_exact_scalar(json("1/0")), SchemaError);
}

TEST(JsonIo, FormatForm) {
  RTernary f(2);
  f.set(2, 0, 0, Rational(1));
  f.set(1, 1, 0, Rational(-1, 2));
  f.set(0, 0, 2, Rational(3));
  EXPECT_EQ(format_form(f), "x^2 - 1/2*x*y + 3*z^2");
  EXPECT_EQ(format_form(RTernary(2)), "0");
}

TEST(Cli, DecomposeSucceeds) {
  JobRun r = run_job("decompose", R"({"monomials":{"400":1,"040":1,"004":1,"220":0.5}})");
  ASSERT_EQ(r.code, kSuccess) << r.err;
  json out = json::parse(r.out);
  EXPECT_LE(out["residual"].get<double>(), 1e-6);
  EXPECT_EQ(out["triple"].size(), 3u);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_job("decompose", R"({"monomials":{"400":-1,"040":1,"004":1}})").code, kNotPsd);
  // x^4 + y^4 + z^4 has f2 = 0, so E1 holds; without retries nothing else is tried.
  JobRun g = run_job("decompose", R"({"monomials":{"400":1,"040":1,"004":1}})", Mode::floating, true, 0);
  EXPECT_EQ(g.code, kGenericityExhausted);
  EXPECT_EQ(json::parse(g.out)["error"]["condition"], "E1");
  EXPECT_EQ(run_job("decompose", R"({"monomials":{"400":"x"}})").code, kFailure);
  EXPECT_EQ(run_job("frobnicate", "{}").code, kFailure);
}

TEST(Cli, NumericalFailureExitCode) {
  JobSpec job;
  job.command = "decompose";
  job.input = json::parse(kExample);
  job.tol = 1e-40;  // unattainable in double precision
  job.max_retries = 1;
  std::ostringstream out, err;
  EXPECT_EQ(run(job, out, err), kNumericalFailure);
}

TEST(Cli, DeterministicOutput) {
  JobRun a = run_job("decompose", R"({"monomials":{"400":1,"040":1,"004":1}})");
  JobRun b = run_job("decompose", R"({"monomials":{"400":1,"040":1,"004":1}})");
  ASSERT_EQ(a.code, kSuccess);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, ExampleGenericityAndClasses) {
  JobRun g = run_job("genericity", kExample, Mode::exact);
  ASSERT_EQ(g.code, kSuccess) << g.err;
  json rep = json::parse(g.out);
  EXPECT_TRUE(rep["generic"].get<bool>());
  EXPECT_EQ(rep["conditions"]["E8"]["witness"], "56");

  JobRun c = run_job("classes", kExample, Mode::exact);
  ASSERT_EQ(c.code, kSuccess) << c.err;
  EXPECT_EQ(json::parse(c.out)["classes"], 8);
}

TEST(Cli, PencilGenericityInFloatMode) {
  JobRun g = run_job("genericity", R"({"f2":[1,-1,1],"f3":[0,1,0,-1],"f4":[1,0,0,0,1]})");
  ASSERT_EQ(g.code, kSuccess) << g.err;
  json rep = json::parse(g.out);
  EXPECT_FALSE(rep["exact"].get<bool>());
  EXPECT_TRUE(rep["generic"].get<bool>());
}

TEST(Cli, Phi) {
  JobRun r = run_job("phi", R"({"f":["1","-1","1"],"g":["0","1","0","-1"],"h":["1","0","0","0","1"],"m":2,"n":4})",
                  Mode::exact);
  ASSERT_EQ(r.code, kSuccess) << r.err;
  EXPECT_TRUE(json::parse(r.out)["phi"].is_string());
  EXPECT_EQ(run_job("phi", R"({"f":["1","0","0","1"],"g":["1"],"h":["1"],"m":1,"n":0})", Mode::exact).code, kFailure);
}

TEST(Cli, NormformOfPositiveForm) {
  JobRun r = run_job("normform", R"({"monomials":{"400":2,"040":3,"004":1,"211":0.5}})");
  ASSERT_EQ(r.code, kSuccess) << r.err;
  json out = json::parse(r.out);
  EXPECT_FALSE(out["real_zero"].get<bool>());
  EXPECT_EQ(out["form"]["monomials"]["004"], 1.0);
  EXPECT_FALSE(out["form"]["monomials"].contains("103"));
  EXPECT_FALSE(out["form"]["monomials"].contains("013"));
}

TEST(Cli, VerifyExactTriple) {
  const char* in = R"({"form":{"monomials":{"400":"1","040":"1","004":"1","220":"2"}},
                       "triple":[{"monomials":{"200":"1","020":"1"}},{"monomials":{}},{"monomials":{"002":"1"}}]})";
  JobRun r = run_job("verify", in, Mode::exact);
  ASSERT_EQ(r.code, kSuccess) << r.err;
  json out = json::parse(r.out);
  EXPECT_EQ(out["residual"], "0");
  EXPECT_EQ(out["differences"].size(), 15u);
}

TEST(Cli, VerifyPerturbedTriple) {
  const char* in = R"({"form":{"monomials":{"400":1,"040":1,"004":1.001}},
                       "triple":[{"monomials":{"200":1}},{"monomials":{"020":1}},{"monomials":{"002":1}}]})";
  JobRun r = run_job("verify", in);
  EXPECT_EQ(r.code, kFailure);
  EXPECT_NEAR(json::parse(r.out)["residual"].get<double>(), 1e-3, 1e-15);
}

TEST(Cli, VerifyDegreeMismatchIsSchemaError) {
  const char* in = R"({"form":{"monomials":{"400":1}},
                       "triple":[{"monomials":{"300":1}},{"monomials":{}},{"monomials":{}}]})";
  JobRun r = run_job("verify", in);
  EXPECT_EQ(r.code, kFailure);
  EXPECT_EQ(json::parse(r.out)["error"]["kind"], "schema");
}

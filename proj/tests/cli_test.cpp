#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <sys/wait.h>

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
    std::string cmd = "cd " PRPKIT_SOURCE_DIR " && " + env + " " PRPKIT_CLI " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    std::string out;
    std::array<char, 4096> buf{};
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

}  // namespace

TEST(Cli, Classify) {
    auto r = run("classify '[F(x,x)]_{x}'");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "PrimeReflection\n");
    r = run("--json classify '[F(x,x)]_{x}'");
    EXPECT_NE(r.out.find("\"category\":\"PrimeReflection\""), std::string::npos) << r.out;
}

TEST(Cli, Decompose) {
    auto r = run("decompose '[G(x,y)]_{y x}'");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "C(elem G/2)\n");
    r = run("--trace decompose '[G(x,y)]_{y x}'");
    EXPECT_NE(r.out.find("ElementaryUpToPermutation"), std::string::npos) << r.out;
}

TEST(Cli, CheckProof) {
    auto r = run("check-proof corpus/t1/barcan.prf");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "accepted\n");
    r = run("--system T2 --json check-proof corpus/t1/barcan.prf");
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("\"verdict\":\"rejected\""), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("\"line\":"), std::string::npos);
    r = run("check-proof --explain corpus/t1/s5_i.prf");
    EXPECT_NE(r.out.find("3. "), std::string::npos) << r.out;
}

TEST(Cli, Eval) {
    auto r = run("eval fixtures/bool.json - x=tt 'F(x) & ~F(x)'");
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(r.out, "false\n");
    r = run("eval fixtures/world.json x=a,y=b 'G(x,y)'");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "true\n");
    r = run("eval fixtures/bool.json 'F(x)'");
    EXPECT_EQ(r.code, 2);
}

TEST(Cli, CheckModel) {
    auto r = run("check-model fixtures/world.json");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.rfind("valid", 0), 0u) << r.out;
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("frobnicate").code, 2);
    EXPECT_EQ(run("classify '[F(x'").code, 2);
    EXPECT_EQ(run("check-proof no/such/file.prf").code, 2);
}

TEST(Cli, RunCorpusIsDeterministic) {
    auto a = run("--json run-corpus");
    auto b = run("--json run-corpus");
    EXPECT_EQ(a.code, 0) << a.out;
    EXPECT_EQ(a.out, b.out);
    auto missing = run("run-corpus", "PRPKIT_CORPUS=/nonexistent");
    EXPECT_EQ(missing.code, 2);
}

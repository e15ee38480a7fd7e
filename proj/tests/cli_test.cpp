// Exercises the installed CLI binary end to end; the binary path arrives as
// argv[1] from ctest.

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "qpai/sample.hpp"
#include "qpai/tomita.hpp"

namespace fs = std::filesystem;

namespace {

std::string g_cli_path;
fs::path g_workdir;

struct CliResult {
    int exit_code = -1;
    std::string output;
};

CliResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    static int counter = 0;
    const fs::path out_file = g_workdir / ("cli_out_" + std::to_string(counter++) + ".txt");
    const std::string command = env_prefix + (env_prefix.empty() ? "" : " ") + g_cli_path + " " +
                                args + " > " + out_file.string() + " 2>&1";
    const int status = std::system(command.c_str());
    CliResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out_file);
    std::ostringstream buf;
    buf << in.rdbuf();
    result.output = buf.str();
    return result;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST(Cli, GenWritesAConformingCharacteristicSample) {
    const fs::path out = g_workdir / "t3_char.sample";
    const CliResult r =
        run_cli("gen --target tomita3 --kind characteristic --out " + out.string());
    ASSERT_EQ(r.exit_code, 0) << r.output;
    const qpai::Sample sample = qpai::load_sample(slurp(out));
    EXPECT_TRUE(qpai::is_conforming(qpai::tomita(3), sample));
}

TEST(Cli, GenRandomIsDeterministicPerSeed) {
    const fs::path a = g_workdir / "rand_a.sample";
    const fs::path b = g_workdir / "rand_b.sample";
    ASSERT_EQ(run_cli("gen --target tomita1 --kind random --count 100 --max-len 12 --seed 5 --out " +
                      a.string())
                  .exit_code,
              0);
    ASSERT_EQ(run_cli("gen --target tomita1 --kind random --count 100 --max-len 12 --seed 5 --out " +
                      b.string())
                  .exit_code,
              0);
    EXPECT_EQ(slurp(a), slurp(b));
}

TEST(Cli, GenRejectsUnknownTomitaId) {
    const CliResult r = run_cli("gen --target tomita9 --kind characteristic");
    EXPECT_EQ(r.exit_code, 2) << r.output;
}

TEST(Cli, EnvSeedIsTheFallback) {
    const fs::path a = g_workdir / "env_a.sample";
    const fs::path b = g_workdir / "env_b.sample";
    ASSERT_EQ(run_cli("gen --target tomita2 --kind random --count 30 --max-len 8 --out " + a.string(),
                      "QPAI_SEED=7")
                  .exit_code,
              0);
    ASSERT_EQ(
        run_cli("gen --target tomita2 --kind random --count 30 --max-len 8 --seed 7 --out " +
                b.string())
            .exit_code,
        0);
    EXPECT_EQ(slurp(a), slurp(b));
}

TEST(Cli, LearnRpniWritesArtifactsAndExitsZero) {
    const fs::path data = g_workdir / "t2_char.sample";
    ASSERT_EQ(run_cli("gen --target tomita2 --kind characteristic --out " + data.string()).exit_code,
              0);
    const fs::path out_dir = g_workdir / "learn_rpni";
    const CliResult r = run_cli("learn --learner rpni --data " + data.string() + " --seed 1 --out " +
                                out_dir.string());
    EXPECT_EQ(r.exit_code, 0) << r.output;
    EXPECT_TRUE(fs::exists(out_dir / "t2_char_rpni.dot"));
    EXPECT_TRUE(fs::exists(out_dir / "t2_char_rpni_metrics.json"));
    EXPECT_NE(r.output.find("\"conforming\": true"), std::string::npos) << r.output;
}

TEST(Cli, LearnQpaiConvergesOnTomita1) {
    const fs::path data = g_workdir / "t1_char.sample";
    ASSERT_EQ(run_cli("gen --target tomita1 --kind characteristic --out " + data.string()).exit_code,
              0);
    const fs::path out_dir = g_workdir / "learn_qpai";
    const CliResult r = run_cli("learn --learner qpai --data " + data.string() +
                                " --seed 1 --max-states 6 --out " + out_dir.string());
    EXPECT_EQ(r.exit_code, 0) << r.output;
    EXPECT_TRUE(fs::exists(out_dir / "t1_char_qpai.dot"));
}

TEST(Cli, LearnMissingDataFileExitsOne) {
    const CliResult r = run_cli("learn --learner qpai --data /nonexistent/never.sample --seed 1");
    EXPECT_EQ(r.exit_code, 1) << r.output;
}

TEST(Cli, LearnUnknownLearnerExitsTwo) {
    const fs::path data = g_workdir / "t1_dummy.sample";
    ASSERT_EQ(run_cli("gen --target tomita1 --kind characteristic --out " + data.string()).exit_code,
              0);
    const CliResult r = run_cli("learn --learner magic --data " + data.string());
    EXPECT_EQ(r.exit_code, 2) << r.output;
}

TEST(Cli, BenchEmitsTheCsvReport) {
    const fs::path out_dir = g_workdir / "bench_out";
    const CliResult r = run_cli(
        "bench --targets tomita1 --learners rpni --seeds 1,2 --kind characteristic "
        "--test-count 40 --test-max-len 8 --format csv --out " +
        out_dir.string());
    ASSERT_EQ(r.exit_code, 0) << r.output;
    EXPECT_NE(r.output.find("target,learner,seed,acc_train,acc_test"), std::string::npos);
    EXPECT_TRUE(fs::exists(out_dir / "metrics.csv"));
    EXPECT_TRUE(fs::exists(out_dir / "summary.md"));
}

TEST(Cli, BenchAcceptsAJsonConfigFile) {
    const fs::path config = g_workdir / "bench_config.json";
    {
        std::ofstream out(config);
        out << "{\"targets\":[\"tomita1\"],\"learners\":[\"rpni\"],\"seeds\":[1],"
               "\"kind\":\"characteristic\",\"test_count\":20,\"test_max_len\":6}\n";
    }
    const CliResult r = run_cli("bench --config " + config.string() + " --format csv");
    ASSERT_EQ(r.exit_code, 0) << r.output;
    EXPECT_NE(r.output.find("tomita1,rpni,1,"), std::string::npos);
}

int main(int argc, char** argv) {
    ::testing::InitGoogleTest(&argc, argv);
    if (argc < 2) {
        std::fprintf(stderr, "usage: cli_test <path-to-qpai-binary>\n");
        return 2;
    }
    g_cli_path = argv[1];
    g_workdir = fs::temp_directory_path() / "qpai_cli_test";
    fs::remove_all(g_workdir);
    fs::create_directories(g_workdir);
    const int rc = RUN_ALL_TESTS();
    fs::remove_all(g_workdir);
    return rc;
}

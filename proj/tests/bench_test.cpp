#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qpai/bench.hpp"
#include "test_util.hpp"

using namespace qpai;

namespace {

// Blank out the wall-time column (index 7) of every data row.
std::string strip_wall_column(const std::string& csv) {
    std::istringstream in(csv);
    std::string out;
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> fields;
        std::string field;
        std::istringstream fs(line);
        while (std::getline(fs, field, ','))
            fields.push_back(field);
        if (fields.size() == 9 && fields[0] != "target")
            fields[7] = "X";
        for (std::size_t i = 0; i < fields.size(); ++i)
            out += (i ? "," : "") + fields[i];
        out += "\n";
    }
    return out;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

BenchConfig small_config() {
    BenchConfig cfg;
    cfg.targets = {"tomita1"};
    cfg.learners = {"rpni"};
    cfg.seeds = {1, 2, 3};
    cfg.dataset_kind = "characteristic";
    cfg.test_count = 60;
    cfg.test_max_len = 8;
    cfg.max_states = 4;
    cfg.hyper.episodes = 30;
    return cfg;
}

}  // namespace

TEST(FormatMeanSd, MatchesTheReportStyle) {
    EXPECT_EQ(format_mean_sd(1.0, 0.0), "100.0 ± 0.0");
    EXPECT_EQ(format_mean_sd(0.95, 0.0707106781), "95.0 ± 7.07");
}

TEST(Aggregate, SampleStandardDeviation) {
    BenchRow a{"t", "qpai", 1, {}};
    a.metrics.accuracy_train = 1.0;
    a.metrics.accuracy_test = 0.9;
    BenchRow b{"t", "qpai", 2, {}};
    b.metrics.accuracy_train = 1.0;
    b.metrics.accuracy_test = 1.0;
    const std::vector<Aggregate> aggs = aggregate_rows({a, b});
    ASSERT_EQ(aggs.size(), 1u);
    EXPECT_DOUBLE_EQ(aggs[0].mean_train, 1.0);
    EXPECT_DOUBLE_EQ(aggs[0].sd_train, 0.0);
    ASSERT_TRUE(aggs[0].mean_test.has_value());
    EXPECT_DOUBLE_EQ(*aggs[0].mean_test, 0.95);
    EXPECT_NEAR(aggs[0].sd_test, 0.0707106781, 1e-9);
    EXPECT_EQ(format_mean_sd(*aggs[0].mean_test, aggs[0].sd_test), "95.0 ± 7.07");
}

TEST(Bench, CsvHasHeaderThreeRowsAndOneAggregate) {
    const BenchOutput out = run_bench(small_config());
    std::istringstream in(out.csv);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line))
        lines.push_back(line);
    ASSERT_EQ(lines.size(), 5u);
    EXPECT_EQ(lines[0], "target,learner,seed,acc_train,acc_test,dfa_size,episodes,wall_ms,conforming");
    EXPECT_EQ(lines[4].substr(0, 17), "tomita1,rpni,all,");
}

TEST(Bench, RepeatRunsAgreeModuloWallTime) {
    BenchConfig cfg = small_config();
    cfg.learners = {"qpai", "rpni"};
    cfg.seeds = {1, 2};
    const BenchOutput a = run_bench(cfg);
    const BenchOutput b = run_bench(cfg);
    EXPECT_EQ(strip_wall_column(a.csv), strip_wall_column(b.csv));
    EXPECT_EQ(a.markdown, b.markdown);
}

TEST(Bench, ParallelGridMatchesSequential) {
    BenchConfig cfg = small_config();
    cfg.learners = {"qpai", "rpni"};
    cfg.seeds = {1, 2, 3};
    BenchConfig parallel = cfg;
    parallel.threads = 3;
    const BenchOutput sequential_out = run_bench(cfg);
    const BenchOutput parallel_out = run_bench(parallel);
    EXPECT_EQ(strip_wall_column(sequential_out.csv), strip_wall_column(parallel_out.csv));
}

TEST(Bench, PersistedArtifactsReproduceTheRowMetrics) {
    namespace fs = std::filesystem;
    const fs::path root = fs::temp_directory_path() / "qpai_bench_audit";
    fs::remove_all(root);
    BenchConfig cfg;
    cfg.targets = {"tomita2"};
    cfg.learners = {"rpni"};
    cfg.seeds = {1};
    cfg.dataset_kind = "random";
    cfg.random_count = 30;
    cfg.random_max_len = 8;
    cfg.test_count = 40;
    cfg.test_max_len = 8;
    cfg.out_dir = root.string();
    const BenchOutput out = run_bench(cfg);
    ASSERT_EQ(out.runs.size(), 1u);

    const Sample train = load_sample(slurp(root / "samples" / "tomita2_train_seed1.sample"));
    const Sample test = load_sample(slurp(root / "samples" / "tomita2_test.sample"));
    const BenchRun& run0 = out.runs[0];
    EXPECT_EQ(train.entries, run0.train.entries);
    EXPECT_DOUBLE_EQ(accuracy(run0.dfa, train), run0.row.metrics.accuracy_train);
    ASSERT_TRUE(run0.row.metrics.accuracy_test.has_value());
    EXPECT_DOUBLE_EQ(accuracy(run0.dfa, test), *run0.row.metrics.accuracy_test);
    EXPECT_TRUE(fs::exists(root / "dfa" / "tomita2_rpni_seed1.dot"));
    EXPECT_TRUE(fs::exists(root / "metrics.csv"));
    EXPECT_TRUE(fs::exists(root / "summary.md"));
    fs::remove_all(root);
}

TEST(Bench, FileTargetUsesAHoldoutSplit) {
    namespace fs = std::filesystem;
    const fs::path path = fs::temp_directory_path() / "qpai_file_target.sample";
    const Sample labeled =
        label_with(tomita(1), tomita_alphabet(), testutil::all_words(2, 4));
    {
        std::ofstream out(path);
        out << save_sample(labeled);
    }
    BenchConfig cfg;
    cfg.targets = {path.string()};
    cfg.learners = {"rpni"};
    cfg.seeds = {1};
    const BenchOutput out = run_bench(cfg);
    ASSERT_EQ(out.rows.size(), 1u);
    EXPECT_TRUE(out.rows[0].metrics.accuracy_test.has_value());
    // 31 words split 4:1
    EXPECT_EQ(out.runs[0].train.entries.size(), 25u);
    EXPECT_EQ(out.runs[0].test.entries.size(), 6u);
    fs::remove(path);
}

TEST(Bench, InvalidConfigsAreRejected) {
    BenchConfig cfg = small_config();
    cfg.learners = {"magic"};
    EXPECT_THROW(run_bench(cfg), std::invalid_argument);
    cfg = small_config();
    cfg.seeds = {};
    EXPECT_THROW(run_bench(cfg), std::invalid_argument);
    cfg = small_config();
    cfg.targets = {"tomita9"};
    EXPECT_THROW(run_bench(cfg), std::invalid_argument);
    cfg = small_config();
    cfg.dataset_kind = "weird";
    EXPECT_THROW(run_bench(cfg), std::invalid_argument);
}

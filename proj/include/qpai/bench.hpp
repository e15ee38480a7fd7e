#pragma once

/*
 * Benchmark driver: runs the learners over a target x learner x seed grid,
 * collects per-run metrics, and renders the CSV and Markdown reports. Rows
 * are deterministic for a fixed config; only the wall-time column varies
 * between runs. Jobs are independent, so the grid can run on a worker pool.
 */

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "qpai/dataset.hpp"
#include "qpai/learner.hpp"
#include "qpai/rpni.hpp"
#include "qpai/sample.hpp"
#include "qpai/tomita.hpp"

namespace qpai {

struct BenchConfig {
    std::vector<std::string> targets = {"tomita1"};  // tomita1..7 or sample file paths
    std::vector<std::string> learners = {"qpai"};    // qpai | rpni
    std::vector<std::uint64_t> seeds = {1};
    Hyperparams hyper;
    std::string dataset_kind = "characteristic";  // characteristic | random
    int random_count = 200;
    int random_max_len = 12;
    int test_count = 500;
    int test_max_len = 15;
    std::uint64_t test_seed = 9001;
    int max_states = 10;
    std::optional<int> init_states;
    int threads = 1;
    std::string out_dir;  // empty: nothing persisted

    void validate() const {
        if (targets.empty() || learners.empty() || seeds.empty())
            throw std::invalid_argument("bench: targets, learners and seeds must be nonempty");
        for (const std::string& learner : learners)
            if (learner != "qpai" && learner != "rpni")
                throw std::invalid_argument("bench: unknown learner '" + learner + "'");
        if (dataset_kind != "characteristic" && dataset_kind != "random")
            throw std::invalid_argument("bench: unknown dataset kind '" + dataset_kind + "'");
        if (random_count < 1 || random_max_len < 0 || test_count < 0 || test_max_len < 0)
            throw std::invalid_argument("bench: dataset sizes out of range");
        if (max_states < 1)
            throw std::invalid_argument("bench: max_states must be positive");
        if (threads < 1)
            throw std::invalid_argument("bench: threads must be positive");
        hyper.validate();
    }
};

struct BenchRow {
    std::string target;
    std::string learner;
    std::uint64_t seed = 0;
    RunMetrics metrics;
};

// Row plus the artifacts needed for persistence and auditing.
struct BenchRun {
    BenchRow row;
    Dfa dfa;
    Sample train;
    Sample test;
};

struct Aggregate {
    std::string target;
    std::string learner;
    int runs = 0;
    int conforming = 0;
    double mean_train = 0.0;
    double sd_train = 0.0;
    std::optional<double> mean_test;
    double sd_test = 0.0;
    double mean_size = 0.0;
    double mean_episodes = 0.0;
    double mean_wall = 0.0;
};

namespace detail {

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    return splitmix64(splitmix64(a) ^ b);
}

struct ResolvedTarget {
    bool from_file = false;
    Dfa dfa;
    Alphabet alphabet;
    Sample file_sample;
};

inline ResolvedTarget resolve_target(const std::string& name) {
    if (name.rfind("tomita", 0) == 0 &&
        name.find_first_not_of("0123456789", 6) == std::string::npos && name.size() > 6) {
        if (name.size() != 7 || name[6] < '1' || name[6] > '7')
            throw std::invalid_argument("bench: unknown tomita grammar '" + name + "'");
        ResolvedTarget out;
        out.dfa = tomita(name[6] - '0');
        out.alphabet = tomita_alphabet();
        return out;
    }
    std::ifstream in(name);
    if (!in)
        throw std::runtime_error("bench: cannot open sample file '" + name + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    ResolvedTarget out;
    out.from_file = true;
    out.file_sample = load_sample(buf.str());
    out.alphabet = out.file_sample.alphabet;
    return out;
}

inline BenchRun run_single(const BenchConfig& cfg, const std::string& target_name,
                           const std::string& learner, std::uint64_t seed) {
    const ResolvedTarget target = resolve_target(target_name);
    BenchRun out;
    out.row.target = target_name;
    out.row.learner = learner;
    out.row.seed = seed;

    if (!target.from_file) {
        if (cfg.dataset_kind == "characteristic")
            out.train = gen_characteristic(target.dfa, target.alphabet);
        else
            out.train = gen_random(target.dfa, target.alphabet, cfg.random_count,
                                   cfg.random_max_len, mix_seed(seed, 0x747261696eULL));
        if (cfg.test_count > 0) {
            const Sample pool = gen_random(target.dfa, target.alphabet, cfg.test_count,
                                           cfg.test_max_len, cfg.test_seed);
            std::set<Word> train_words;
            for (const auto& [word, label] : out.train.entries)
                train_words.insert(word);
            std::vector<std::pair<Word, Label>> kept;
            for (const auto& entry : pool.entries)
                if (!train_words.count(entry.first))
                    kept.push_back(entry);
            out.test = make_sample(target.alphabet, std::move(kept));
        }
    } else {
        // no ground-truth automaton: hold out every fifth word for testing
        std::vector<std::pair<Word, Label>> train_entries;
        std::vector<std::pair<Word, Label>> test_entries;
        for (std::size_t i = 0; i < target.file_sample.entries.size(); ++i)
            (i % 5 == 4 ? test_entries : train_entries).push_back(target.file_sample.entries[i]);
        if (train_entries.empty())
            throw std::invalid_argument("bench: training split of '" + target_name + "' is empty");
        out.train = make_sample(target.alphabet, std::move(train_entries));
        out.test = make_sample(target.alphabet, std::move(test_entries));
    }

    if (learner == "qpai") {
        Hyperparams h = cfg.hyper;
        h.rng_seed = seed;
        LearnResult result = infer(out.train, h, cfg.max_states, cfg.init_states);
        out.dfa = std::move(result.dfa);
        out.row.metrics = result.metrics;
    } else {
        const auto start = std::chrono::steady_clock::now();
        Dfa dfa = rpni(out.train);
        RunMetrics metrics;
        metrics.accuracy_train = accuracy(dfa, out.train);
        metrics.conforming = metrics.accuracy_train == 1.0;
        metrics.dfa_size = minimize(dfa).n_states;
        metrics.episodes_used = 0;
        metrics.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                   std::chrono::steady_clock::now() - start)
                                   .count();
        metrics.seed = seed;
        metrics.state_budget = dfa.n_states;
        out.dfa = std::move(dfa);
        out.row.metrics = metrics;
    }
    if (!out.test.entries.empty())
        out.row.metrics.accuracy_test = accuracy(out.dfa, out.test);
    return out;
}

inline double sample_stdev(const std::vector<double>& xs, double mean) {
    if (xs.size() < 2)
        return 0.0;
    double sum = 0.0;
    for (double x : xs)
        sum += (x - mean) * (x - mean);
    return std::sqrt(sum / static_cast<double>(xs.size() - 1));
}

inline std::string sanitize(const std::string& name) {
    std::string out = name;
    for (char& c : out)
        if (c == '/' || c == '\\' || c == '.' || c == ' ')
            c = '_';
    return out;
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("bench: cannot write '" + path.string() + "'");
    out << content;
}

}  // namespace detail

// Mean and sample standard deviation of per-run accuracies, grouped by
// (target, learner) in first-appearance order.
inline std::vector<Aggregate> aggregate_rows(const std::vector<BenchRow>& rows) {
    std::vector<Aggregate> out;
    auto find = [&](const BenchRow& row) -> Aggregate& {
        for (Aggregate& a : out)
            if (a.target == row.target && a.learner == row.learner)
                return a;
        out.push_back(Aggregate{row.target, row.learner});
        return out.back();
    };
    for (const BenchRow& row : rows)
        find(row);  // establish group order

    for (Aggregate& a : out) {
        std::vector<double> train;
        std::vector<double> test;
        double size_sum = 0.0;
        double episode_sum = 0.0;
        double wall_sum = 0.0;
        for (const BenchRow& row : rows) {
            if (row.target != a.target || row.learner != a.learner)
                continue;
            ++a.runs;
            a.conforming += row.metrics.conforming ? 1 : 0;
            train.push_back(row.metrics.accuracy_train);
            if (row.metrics.accuracy_test)
                test.push_back(*row.metrics.accuracy_test);
            size_sum += row.metrics.dfa_size;
            episode_sum += row.metrics.episodes_used;
            wall_sum += static_cast<double>(row.metrics.wall_time_ms);
        }
        for (double t : train)
            a.mean_train += t;
        a.mean_train /= static_cast<double>(train.size());
        a.sd_train = detail::sample_stdev(train, a.mean_train);
        if (!test.empty()) {
            double mean = 0.0;
            for (double t : test)
                mean += t;
            mean /= static_cast<double>(test.size());
            a.mean_test = mean;
            a.sd_test = detail::sample_stdev(test, mean);
        }
        a.mean_size = size_sum / a.runs;
        a.mean_episodes = episode_sum / a.runs;
        a.mean_wall = wall_sum / a.runs;
    }
    return out;
}

// "95.0 ± 7.07" on the percent scale; an exactly-zero deviation prints "0.0".
inline std::string format_mean_sd(double mean, double sd) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.1f", mean * 100.0);
    std::string out = buf;
    if (sd == 0.0) {
        out += " ± 0.0";
    } else {
        std::snprintf(buf, sizeof buf, " ± %.2f", sd * 100.0);
        out += buf;
    }
    return out;
}

inline std::string bench_csv(const std::vector<BenchRow>& rows) {
    std::string out = "target,learner,seed,acc_train,acc_test,dfa_size,episodes,wall_ms,conforming\n";
    char buf[320];
    for (const BenchRow& row : rows) {
        char test_field[32] = "";
        if (row.metrics.accuracy_test)
            std::snprintf(test_field, sizeof test_field, "%.6f", *row.metrics.accuracy_test);
        std::snprintf(buf, sizeof buf, "%s,%s,%llu,%.6f,%s,%d,%d,%lld,%d\n", row.target.c_str(),
                      row.learner.c_str(), static_cast<unsigned long long>(row.seed),
                      row.metrics.accuracy_train, test_field, row.metrics.dfa_size,
                      row.metrics.episodes_used,
                      static_cast<long long>(row.metrics.wall_time_ms),
                      row.metrics.conforming ? 1 : 0);
        out += buf;
    }
    for (const Aggregate& a : aggregate_rows(rows)) {
        char test_field[32] = "";
        if (a.mean_test)
            std::snprintf(test_field, sizeof test_field, "%.6f", *a.mean_test);
        std::snprintf(buf, sizeof buf, "%s,%s,all,%.6f,%s,%.2f,%.2f,%.2f,%.6f\n", a.target.c_str(),
                      a.learner.c_str(), a.mean_train, test_field, a.mean_size, a.mean_episodes,
                      a.mean_wall, static_cast<double>(a.conforming) / a.runs);
        out += buf;
    }
    return out;
}

inline std::string bench_markdown(const std::vector<BenchRow>& rows) {
    std::string out =
        "| target | learner | runs | train acc (%) | test acc (%) | dfa size | conforming |\n"
        "|---|---|---|---|---|---|---|\n";
    char buf[64];
    for (const Aggregate& a : aggregate_rows(rows)) {
        out += "| " + a.target + " | " + a.learner + " | " + std::to_string(a.runs) + " | " +
               format_mean_sd(a.mean_train, a.sd_train) + " | ";
        out += a.mean_test ? format_mean_sd(*a.mean_test, a.sd_test) : std::string("n/a");
        std::snprintf(buf, sizeof buf, " | %.2f | ", a.mean_size);
        out += buf;
        out += std::to_string(a.conforming) + "/" + std::to_string(a.runs) + " |\n";
    }
    return out;
}

struct BenchOutput {
    std::vector<BenchRow> rows;
    std::vector<BenchRun> runs;
    std::string csv;
    std::string markdown;
};

inline BenchOutput run_bench(const BenchConfig& cfg) {
    cfg.validate();
    struct Job {
        std::string target;
        std::string learner;
        std::uint64_t seed;
    };
    std::vector<Job> jobs;
    for (const std::string& target : cfg.targets)
        for (const std::string& learner : cfg.learners)
            for (std::uint64_t seed : cfg.seeds)
                jobs.push_back(Job{target, learner, seed});

    std::vector<BenchRun> runs(jobs.size());
    std::atomic<std::size_t> cursor{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= jobs.size())
                return;
            try {
                runs[i] = detail::run_single(cfg, jobs[i].target, jobs[i].learner, jobs[i].seed);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                return;
            }
        }
    };
    const int n_threads =
        std::max(1, std::min(cfg.threads, static_cast<int>(jobs.size())));
    if (n_threads == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_threads));
        for (int i = 0; i < n_threads; ++i)
            pool.emplace_back(work);
        for (std::thread& t : pool)
            t.join();
    }
    if (failure)
        std::rethrow_exception(failure);

    BenchOutput out;
    out.rows.reserve(runs.size());
    for (const BenchRun& run : runs)
        out.rows.push_back(run.row);
    out.csv = bench_csv(out.rows);
    out.markdown = bench_markdown(out.rows);
    out.runs = std::move(runs);

    if (!cfg.out_dir.empty()) {
        namespace fs = std::filesystem;
        const fs::path root(cfg.out_dir);
        fs::create_directories(root / "samples");
        fs::create_directories(root / "dfa");
        detail::write_file(root / "metrics.csv", out.csv);
        detail::write_file(root / "summary.md", out.markdown);
        std::set<std::string> written;
        for (const BenchRun& run : out.runs) {
            const std::string stem = detail::sanitize(run.row.target);
            std::string train_name = stem + "_train";
            if (cfg.dataset_kind == "random")
                train_name += "_seed" + std::to_string(run.row.seed);
            train_name += ".sample";
            if (written.insert(train_name).second)
                detail::write_file(root / "samples" / train_name, save_sample(run.train));
            const std::string test_name = stem + "_test.sample";
            if (!run.test.entries.empty() && written.insert(test_name).second)
                detail::write_file(root / "samples" / test_name, save_sample(run.test));
            const std::string dot_name =
                stem + "_" + run.row.learner + "_seed" + std::to_string(run.row.seed) + ".dot";
            detail::write_file(root / "dfa" / dot_name,
                               to_dot(run.dfa, run.train.alphabet));
        }
    }
    return out;
}

}  // namespace qpai

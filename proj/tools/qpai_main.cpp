/*
 * Command line front end.
 *
 *   qpai learn --learner {qpai|rpni} --data FILE [hyperparameters] --out DIR
 *   qpai gen   --target tomita1..7 --kind {characteristic|random} --out FILE
 *   qpai bench --targets ... --learners ... --seeds ... --out DIR
 *
 * Exit codes: 0 success (learn: conforming result), 1 I/O failure,
 * 2 bad flags or config, 3 learn finished without a conforming automaton.
 */

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qpai/qpai.hpp"

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write '" + path + "'");
    out << content;
}

qpai::Bootstrap parse_bootstrap(const std::string& name) {
    return name == "successor" ? qpai::Bootstrap::successor : qpai::Bootstrap::row;
}

json metrics_json(const qpai::RunMetrics& m, const std::string& learner) {
    json out{{"learner", learner},
             {"seed", m.seed},
             {"accuracy_train", m.accuracy_train},
             {"dfa_size", m.dfa_size},
             {"episodes", m.episodes_used},
             {"wall_ms", m.wall_time_ms},
             {"conforming", m.conforming},
             {"state_budget", m.state_budget}};
    if (m.accuracy_test)
        out["accuracy_test"] = *m.accuracy_test;
    return out;
}

struct LearnOpts {
    std::string learner = "qpai";
    std::string data;
    std::string out_dir = ".";
    qpai::Hyperparams hyper;
    std::string bootstrap = "row";
    int max_states = 10;
    int init_states = 0;  // 0: derive from the sample
};

int run_learn(const LearnOpts& opt) {
    qpai::Sample sample;
    try {
        sample = qpai::load_sample(read_file(opt.data));
    } catch (const std::exception& e) {
        std::cerr << "learn: " << e.what() << "\n";
        return 1;
    }

    qpai::Hyperparams h = opt.hyper;
    h.bootstrap = parse_bootstrap(opt.bootstrap);
    qpai::Dfa dfa;
    qpai::RunMetrics metrics;
    if (opt.learner == "qpai") {
        std::optional<int> init;
        if (opt.init_states > 0)
            init = opt.init_states;
        qpai::LearnResult result = qpai::infer(sample, h, opt.max_states, init);
        dfa = std::move(result.dfa);
        metrics = result.metrics;
    } else {
        const auto start = std::chrono::steady_clock::now();
        dfa = qpai::rpni(sample);
        metrics.accuracy_train = qpai::accuracy(dfa, sample);
        metrics.conforming = metrics.accuracy_train == 1.0;
        metrics.dfa_size = qpai::minimize(dfa).n_states;
        metrics.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                   std::chrono::steady_clock::now() - start)
                                   .count();
        metrics.seed = h.rng_seed;
        metrics.state_budget = dfa.n_states;
    }

    try {
        std::filesystem::create_directories(opt.out_dir);
        const std::string stem =
            std::filesystem::path(opt.data).stem().string() + "_" + opt.learner;
        write_file(opt.out_dir + "/" + stem + ".dot", qpai::to_dot(dfa, sample.alphabet));
        write_file(opt.out_dir + "/" + stem + "_metrics.json",
                   metrics_json(metrics, opt.learner).dump(2) + "\n");
    } catch (const std::exception& e) {
        std::cerr << "learn: " << e.what() << "\n";
        return 1;
    }
    std::cout << metrics_json(metrics, opt.learner).dump(2) << "\n";
    return metrics.conforming ? 0 : 3;
}

struct GenOpts {
    std::string target;
    std::string kind = "characteristic";
    int count = 200;
    int max_len = 12;
    std::uint64_t seed = 1;
    std::string out = "-";
};

int run_gen(const GenOpts& opt) {
    const int k = opt.target[6] - '0';  // validated as tomita[1-7] by the flag parser
    const qpai::Dfa target = qpai::tomita(k);
    const qpai::Alphabet alphabet = qpai::tomita_alphabet();
    const qpai::Sample sample =
        opt.kind == "characteristic"
            ? qpai::gen_characteristic(target, alphabet)
            : qpai::gen_random(target, alphabet, opt.count, opt.max_len, opt.seed);
    const std::string text = qpai::save_sample(sample);
    if (opt.out == "-") {
        std::cout << text;
    } else {
        try {
            write_file(opt.out, text);
        } catch (const std::exception& e) {
            std::cerr << "gen: " << e.what() << "\n";
            return 1;
        }
    }
    return 0;
}

struct BenchOpts {
    qpai::BenchConfig cfg;
    std::string bootstrap = "row";
    int init_states = 0;
    std::string config_path;
    std::string format = "md";
};

void apply_config_file(qpai::BenchConfig& cfg, std::string& bootstrap, int& init_states,
                       const std::string& path) {
    const json doc = json::parse(read_file(path));
    if (doc.contains("targets"))
        cfg.targets = doc["targets"].get<std::vector<std::string>>();
    if (doc.contains("learners"))
        cfg.learners = doc["learners"].get<std::vector<std::string>>();
    if (doc.contains("seeds"))
        cfg.seeds = doc["seeds"].get<std::vector<std::uint64_t>>();
    if (doc.contains("kind"))
        cfg.dataset_kind = doc["kind"].get<std::string>();
    if (doc.contains("count"))
        cfg.random_count = doc["count"].get<int>();
    if (doc.contains("max_len"))
        cfg.random_max_len = doc["max_len"].get<int>();
    if (doc.contains("test_count"))
        cfg.test_count = doc["test_count"].get<int>();
    if (doc.contains("test_max_len"))
        cfg.test_max_len = doc["test_max_len"].get<int>();
    if (doc.contains("test_seed"))
        cfg.test_seed = doc["test_seed"].get<std::uint64_t>();
    if (doc.contains("max_states"))
        cfg.max_states = doc["max_states"].get<int>();
    if (doc.contains("init_states"))
        init_states = doc["init_states"].get<int>();
    if (doc.contains("threads"))
        cfg.threads = doc["threads"].get<int>();
    if (doc.contains("episodes"))
        cfg.hyper.episodes = doc["episodes"].get<int>();
    if (doc.contains("alpha"))
        cfg.hyper.alpha = doc["alpha"].get<double>();
    if (doc.contains("gamma"))
        cfg.hyper.gamma = doc["gamma"].get<double>();
    if (doc.contains("eps_min"))
        cfg.hyper.eps_min = doc["eps_min"].get<double>();
    if (doc.contains("reward"))
        cfg.hyper.reward = doc["reward"].get<double>();
    if (doc.contains("reprocess_bound"))
        cfg.hyper.reprocess_bound = doc["reprocess_bound"].get<int>();
    if (doc.contains("bootstrap"))
        bootstrap = doc["bootstrap"].get<std::string>();
    if (doc.contains("out"))
        cfg.out_dir = doc["out"].get<std::string>();
}

int run_bench_cmd(BenchOpts& opt) {
    opt.cfg.hyper.bootstrap = parse_bootstrap(opt.bootstrap);
    if (opt.init_states > 0)
        opt.cfg.init_states = opt.init_states;
    const qpai::BenchOutput out = qpai::run_bench(opt.cfg);
    if (opt.format == "csv") {
        std::cout << out.csv;
    } else if (opt.format == "json") {
        json rows = json::array();
        for (const qpai::BenchRow& row : out.rows) {
            json entry = metrics_json(row.metrics, row.learner);
            entry["target"] = row.target;
            entry["seed"] = row.seed;
            rows.push_back(entry);
        }
        std::cout << rows.dump(2) << "\n";
    } else {
        std::cout << out.markdown;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Passive DFA inference: Q-learning based learner, RPNI baseline, dataset tools"};
    app.require_subcommand(1);

    const auto tomita_id = CLI::Validator(
        [](std::string& value) -> std::string {
            if (value.size() == 7 && value.rfind("tomita", 0) == 0 && value[6] >= '1' &&
                value[6] <= '7')
                return {};
            return "expected tomita1..tomita7, got '" + value + "'";
        },
        "TOMITA");

    LearnOpts learn_opts;
    CLI::App* learn = app.add_subcommand("learn", "infer a DFA from a labeled sample file");
    learn->add_option("--learner", learn_opts.learner)
        ->check(CLI::IsMember({"qpai", "rpni"}))
        ->capture_default_str();
    learn->add_option("--data", learn_opts.data, "sample file")->required();
    learn->add_option("--out", learn_opts.out_dir, "output directory")->capture_default_str();
    learn->add_option("--episodes", learn_opts.hyper.episodes)->capture_default_str();
    learn->add_option("--alpha", learn_opts.hyper.alpha)->capture_default_str();
    learn->add_option("--gamma", learn_opts.hyper.gamma)->capture_default_str();
    learn->add_option("--eps-min", learn_opts.hyper.eps_min)->capture_default_str();
    learn->add_option("--reward", learn_opts.hyper.reward)->capture_default_str();
    learn->add_option("--seed", learn_opts.hyper.rng_seed)->envname("QPAI_SEED");
    learn->add_option("--max-states", learn_opts.max_states)->capture_default_str();
    learn->add_option("--init-states", learn_opts.init_states,
                      "override the shortest-word initial state count");
    learn->add_option("--reprocess-bound", learn_opts.hyper.reprocess_bound)->capture_default_str();
    learn->add_option("--bootstrap", learn_opts.bootstrap)
        ->check(CLI::IsMember({"row", "successor"}))
        ->capture_default_str();

    GenOpts gen_opts;
    CLI::App* gen = app.add_subcommand("gen", "generate a labeled sample for a tomita grammar");
    gen->add_option("--target", gen_opts.target)->required()->check(tomita_id);
    gen->add_option("--kind", gen_opts.kind)
        ->check(CLI::IsMember({"characteristic", "random"}))
        ->capture_default_str();
    gen->add_option("--count", gen_opts.count)->capture_default_str();
    gen->add_option("--max-len", gen_opts.max_len)->capture_default_str();
    gen->add_option("--seed", gen_opts.seed)->envname("QPAI_SEED");
    gen->add_option("--out", gen_opts.out, "output file, '-' for stdout")->capture_default_str();

    BenchOpts bench_opts;
    CLI::App* bench = app.add_subcommand("bench", "run the learner grid and emit reports");
    bench->add_option("--config", bench_opts.config_path, "JSON config, overridden by flags");
    auto* targets_opt =
        bench->add_option("--targets", bench_opts.cfg.targets)->delimiter(',');
    auto* learners_opt =
        bench->add_option("--learners", bench_opts.cfg.learners)->delimiter(',');
    auto* seeds_opt = bench->add_option("--seeds", bench_opts.cfg.seeds)->delimiter(',');
    auto* kind_opt = bench->add_option("--kind", bench_opts.cfg.dataset_kind)
                         ->check(CLI::IsMember({"characteristic", "random"}));
    auto* count_opt = bench->add_option("--count", bench_opts.cfg.random_count);
    auto* max_len_opt = bench->add_option("--max-len", bench_opts.cfg.random_max_len);
    auto* test_count_opt = bench->add_option("--test-count", bench_opts.cfg.test_count);
    auto* test_max_len_opt = bench->add_option("--test-max-len", bench_opts.cfg.test_max_len);
    auto* test_seed_opt = bench->add_option("--test-seed", bench_opts.cfg.test_seed);
    auto* episodes_opt = bench->add_option("--episodes", bench_opts.cfg.hyper.episodes);
    auto* alpha_opt = bench->add_option("--alpha", bench_opts.cfg.hyper.alpha);
    auto* gamma_opt = bench->add_option("--gamma", bench_opts.cfg.hyper.gamma);
    auto* eps_min_opt = bench->add_option("--eps-min", bench_opts.cfg.hyper.eps_min);
    auto* reward_opt = bench->add_option("--reward", bench_opts.cfg.hyper.reward);
    auto* reprocess_opt =
        bench->add_option("--reprocess-bound", bench_opts.cfg.hyper.reprocess_bound);
    auto* bootstrap_opt = bench->add_option("--bootstrap", bench_opts.bootstrap)
                              ->check(CLI::IsMember({"row", "successor"}));
    auto* max_states_opt = bench->add_option("--max-states", bench_opts.cfg.max_states);
    auto* init_states_opt = bench->add_option("--init-states", bench_opts.init_states);
    auto* threads_opt = bench->add_option("--threads", bench_opts.cfg.threads);
    auto* out_opt = bench->add_option("--out", bench_opts.cfg.out_dir, "output directory");
    bench->add_option("--format", bench_opts.format, "stdout report format")
        ->check(CLI::IsMember({"csv", "md", "json"}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(learn))
            return run_learn(learn_opts);
        if (app.got_subcommand(gen))
            return run_gen(gen_opts);
        if (app.got_subcommand(bench)) {
            if (!bench_opts.config_path.empty()) {
                // flags given on the command line win over config values
                qpai::BenchConfig from_file = bench_opts.cfg;
                apply_config_file(from_file, bench_opts.bootstrap, bench_opts.init_states,
                                  bench_opts.config_path);
                auto keep = [&](CLI::Option* opt, auto member, auto value) {
                    if (opt->count() > 0)
                        from_file.*member = value;
                };
                keep(targets_opt, &qpai::BenchConfig::targets, bench_opts.cfg.targets);
                keep(learners_opt, &qpai::BenchConfig::learners, bench_opts.cfg.learners);
                keep(seeds_opt, &qpai::BenchConfig::seeds, bench_opts.cfg.seeds);
                keep(kind_opt, &qpai::BenchConfig::dataset_kind, bench_opts.cfg.dataset_kind);
                keep(count_opt, &qpai::BenchConfig::random_count, bench_opts.cfg.random_count);
                keep(max_len_opt, &qpai::BenchConfig::random_max_len, bench_opts.cfg.random_max_len);
                keep(test_count_opt, &qpai::BenchConfig::test_count, bench_opts.cfg.test_count);
                keep(test_max_len_opt, &qpai::BenchConfig::test_max_len,
                     bench_opts.cfg.test_max_len);
                keep(test_seed_opt, &qpai::BenchConfig::test_seed, bench_opts.cfg.test_seed);
                keep(max_states_opt, &qpai::BenchConfig::max_states, bench_opts.cfg.max_states);
                keep(threads_opt, &qpai::BenchConfig::threads, bench_opts.cfg.threads);
                keep(out_opt, &qpai::BenchConfig::out_dir, bench_opts.cfg.out_dir);
                if (episodes_opt->count() > 0)
                    from_file.hyper.episodes = bench_opts.cfg.hyper.episodes;
                if (alpha_opt->count() > 0)
                    from_file.hyper.alpha = bench_opts.cfg.hyper.alpha;
                if (gamma_opt->count() > 0)
                    from_file.hyper.gamma = bench_opts.cfg.hyper.gamma;
                if (eps_min_opt->count() > 0)
                    from_file.hyper.eps_min = bench_opts.cfg.hyper.eps_min;
                if (reward_opt->count() > 0)
                    from_file.hyper.reward = bench_opts.cfg.hyper.reward;
                if (reprocess_opt->count() > 0)
                    from_file.hyper.reprocess_bound = bench_opts.cfg.hyper.reprocess_bound;
                if (bootstrap_opt->count() == 0 && init_states_opt->count() == 0) {
                    // bootstrap / init_states already merged inside apply_config_file
                }
                bench_opts.cfg = std::move(from_file);
            }
            return run_bench_cmd(bench_opts);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

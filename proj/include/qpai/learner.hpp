#pragma once

/*
 * The word-by-word training loop. For every sample word a trajectory is
 * drawn against the working Q-table, scored twice (once on the trajectory's
 * own finality prediction, once on the greedy automaton's verdict), and the
 * best-scoring automaton seen so far is tracked across episodes. A word
 * whose greedy verdict stays wrong is reprocessed up to a bound; a perfectly
 * conforming automaton ends the run early.
 */

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qpai/dfa.hpp"
#include "qpai/extract.hpp"
#include "qpai/qtable.hpp"
#include "qpai/random.hpp"
#include "qpai/sample.hpp"

namespace qpai {

struct RunMetrics {
    double accuracy_train = 0.0;
    std::optional<double> accuracy_test;
    int dfa_size = 0;  // states of the minimized result
    int episodes_used = 0;
    std::int64_t wall_time_ms = 0;
    bool conforming = false;
    std::uint64_t seed = 0;
    int state_budget = 0;
    std::int64_t symbol_steps = 0;  // explore/exploit draws across the run
};

struct LearnResult {
    Dfa dfa;
    RunMetrics metrics;
};

struct LearnerState {
    QTable q;
    QTable q_best;
    Dfa dfa_best;
    double best_accuracy = 0.0;
};

inline LearnerState make_learner_state(int n_states, const Sample& sample) {
    QTable q(n_states, sample.alphabet.size());
    PartialDfa seed;
    seed.n_states = 1;
    seed.alphabet_size = sample.alphabet.size();
    seed.delta.assign(static_cast<std::size_t>(sample.alphabet.size()), kNoTransition);
    seed.accepting.assign(1, 0);
    Dfa initial = complete_with_sink(seed);
    const double acc = accuracy(initial, sample);
    return LearnerState{q, q, std::move(initial), acc};
}

struct EvalOutcome {
    Control chi = Control::reprocess;
    Dfa dfa;                      // hypothesis after both updates
    double best_accuracy = 0.0;   // of the tracked best automaton
};

// One evaluation round for a processed word: reward the trajectory's final
// prediction, reward the rebuilt automaton's verdict, then gate the tracked
// best on strict sample-accuracy improvement. The working Q-table keeps both
// updates regardless of the gate.
inline EvalOutcome evaluate_and_update(LearnerState& st, const Sample& sample,
                                       const Trajectory& trajectory, const Word& word, Label label,
                                       const Hyperparams& h) {
    if (!trajectory.empty()) {
        const Label trajectory_verdict = trajectory.back().finality;
        update_qtable_in_place(st.q, trajectory,
                               reward_from_qtable(trajectory_verdict, label, h.reward), h);
    }
    Dfa dfa = dfa_from_q(st.q, sample);
    Label dfa_verdict = run(dfa, word);
    update_qtable_in_place(st.q, trajectory, reward_from_dfa(dfa_verdict, label, h.reward), h);
    dfa = dfa_from_q(st.q, sample);
    dfa_verdict = run(dfa, word);

    Control chi = dfa_verdict == label ? Control::advance : Control::reprocess;
    const double acc = accuracy(dfa, sample);
    if (acc == 1.0) {
        st.q_best = st.q;
        st.dfa_best = dfa;
        st.best_accuracy = acc;
        chi = Control::done;
    } else if (acc > st.best_accuracy) {
        st.q_best = st.q;
        st.dfa_best = dfa;
        st.best_accuracy = acc;
    }
    return EvalOutcome{chi, std::move(dfa), st.best_accuracy};
}

struct TraceEvent {
    int episode;
    int word_index;
    int attempt;
    Control chi;
    double best_accuracy;
};

// State budget the escalation starts from: the length of the shortest sample
// word, clamped to at least one.
inline int initial_state_count(const Sample& sample) {
    if (sample.entries.empty())
        throw std::invalid_argument("initial_state_count: empty sample");
    std::size_t shortest = sample.entries.front().first.size();
    for (const auto& [word, label] : sample.entries)
        shortest = std::min(shortest, word.size());
    return std::max(1, static_cast<int>(shortest));
}

// Train against the sample with a fixed state budget.
inline LearnResult learn(const Sample& sample, int n_states, const Hyperparams& h,
                         std::vector<TraceEvent>* trace = nullptr) {
    h.validate();
    if (sample.entries.empty())
        throw std::invalid_argument("learn: empty sample");
    if (n_states < 1)
        throw std::invalid_argument("learn: state budget must be positive");

    const auto start = std::chrono::steady_clock::now();
    RandomSource rng(h.rng_seed);
    LearnerState st = make_learner_state(n_states, sample);
    std::int64_t symbol_steps = 0;
    int episodes_used = 0;
    bool finished = false;

    for (int episode = 1; episode <= h.episodes && !finished; ++episode) {
        episodes_used = episode;
        for (int word_index = 0;
             word_index < static_cast<int>(sample.entries.size()) && !finished; ++word_index) {
            const auto& [word, label] = sample.entries[static_cast<std::size_t>(word_index)];
            for (int attempt = 1; attempt <= h.reprocess_bound; ++attempt) {
                Trajectory trajectory;
                trajectory.reserve(word.size());
                int state = 0;
                for (int i = 1; i <= static_cast<int>(word.size()); ++i) {
                    const int symbol = word[static_cast<std::size_t>(i - 1)];
                    const auto [next_state, finality] =
                        explore_or_exploit(st.q, state, symbol, i, h, rng);
                    trajectory.push_back(Step{state, symbol, next_state, finality});
                    state = next_state;
                    ++symbol_steps;
                }
                const EvalOutcome outcome = evaluate_and_update(st, sample, trajectory, word, label, h);
                if (trace)
                    trace->push_back(
                        TraceEvent{episode, word_index, attempt, outcome.chi, outcome.best_accuracy});
                if (outcome.chi == Control::done) {
                    finished = true;
                    break;
                }
                if (outcome.chi == Control::advance)
                    break;
            }
        }
    }

    RunMetrics metrics;
    metrics.accuracy_train = st.best_accuracy;
    metrics.conforming = st.best_accuracy == 1.0;
    metrics.dfa_size = minimize(st.dfa_best).n_states;
    metrics.episodes_used = episodes_used;
    metrics.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                               std::chrono::steady_clock::now() - start)
                               .count();
    metrics.seed = h.rng_seed;
    metrics.state_budget = n_states;
    metrics.symbol_steps = symbol_steps;
    return LearnResult{std::move(st.dfa_best), metrics};
}

// State-count escalation: start from the shortest-word budget (or an explicit
// override), retrain with one more state until the result conforms, and fall
// back to the best-accuracy automaton when the cap is reached.
inline LearnResult infer(const Sample& sample, const Hyperparams& h, int max_states,
                         std::optional<int> init_states = {}) {
    h.validate();
    if (sample.entries.empty())
        throw std::invalid_argument("infer: empty sample");
    const int first = init_states.value_or(initial_state_count(sample));
    if (first < 1)
        throw std::invalid_argument("infer: initial state count must be positive");
    if (max_states < first)
        throw std::invalid_argument("infer: max_states below the initial state count");

    const auto start = std::chrono::steady_clock::now();
    std::optional<LearnResult> best;
    std::int64_t symbol_steps = 0;
    for (int n = first; n <= max_states; ++n) {
        Hyperparams level = h;
        level.rng_seed = splitmix64(splitmix64(h.rng_seed) ^ static_cast<std::uint64_t>(n));
        LearnResult result = learn(sample, n, level);
        symbol_steps += result.metrics.symbol_steps;
        const bool done = result.metrics.conforming;
        if (!best || result.metrics.accuracy_train > best->metrics.accuracy_train)
            best = std::move(result);
        if (done)
            break;
    }
    best->metrics.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                     std::chrono::steady_clock::now() - start)
                                     .count();
    best->metrics.symbol_steps = symbol_steps;
    best->metrics.seed = h.rng_seed;
    return *std::move(best);
}

}  // namespace qpai

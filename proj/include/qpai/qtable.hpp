#pragma once

/*
 * Tabular value function over transition choices. Rows index (state, symbol)
 * pairs; columns enumerate (successor, finality) actions, successor-major
 * with the accepting variant first. All argmax scans break ties toward the
 * lowest column index so runs are reproducible.
 */

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qpai/alphabet.hpp"
#include "qpai/dfa.hpp"

namespace qpai {

struct QTable {
    int n = 1;              // automaton states
    int alphabet_size = 0;  // |Sigma|
    std::vector<double> values;

    QTable(int n_states, int alpha_size) : n(n_states), alphabet_size(alpha_size) {
        if (n < 1)
            throw std::invalid_argument("qtable: needs at least one state");
        if (alphabet_size < 0)
            throw std::invalid_argument("qtable: negative alphabet size");
        values.assign(static_cast<std::size_t>(rows()) * cols(), 0.0);
    }

    int rows() const { return n * alphabet_size; }
    int cols() const { return 2 * n; }

    static int column(int next_state, Label finality) {
        return 2 * next_state + (finality == Label::accept ? 0 : 1);
    }
    static std::pair<int, Label> decode_column(int col) {
        return {col / 2, col % 2 == 0 ? Label::accept : Label::reject};
    }

    int row_index(int state, int symbol) const {
        if (state < 0 || state >= n || symbol < 0 || symbol >= alphabet_size)
            throw std::out_of_range("qtable: row index out of range");
        return state * alphabet_size + symbol;
    }

    std::span<const double> row(int state, int symbol) const {
        return std::span<const double>(values).subspan(
            static_cast<std::size_t>(row_index(state, symbol)) * cols(),
            static_cast<std::size_t>(cols()));
    }

    double at(int state, int symbol, int next_state, Label finality) const {
        return values[cell_index(state, symbol, next_state, finality)];
    }
    double& at(int state, int symbol, int next_state, Label finality) {
        return values[cell_index(state, symbol, next_state, finality)];
    }

    int row_argmax(int state, int symbol) const {
        const auto r = row(state, symbol);
        int best = 0;
        for (int col = 1; col < static_cast<int>(r.size()); ++col)
            if (r[static_cast<std::size_t>(col)] > r[static_cast<std::size_t>(best)])
                best = col;
        return best;
    }

    double row_max(int state, int symbol) const {
        const auto r = row(state, symbol);
        return *std::max_element(r.begin(), r.end());
    }

    // Population variance over the 2n action values of one row.
    double row_variance(int state, int symbol) const {
        const auto r = row(state, symbol);
        double mean = 0.0;
        for (double v : r)
            mean += v;
        mean /= static_cast<double>(r.size());
        double variance = 0.0;
        for (double v : r)
            variance += (v - mean) * (v - mean);
        return variance / static_cast<double>(r.size());
    }

    friend bool operator==(const QTable&, const QTable&) = default;

private:
    std::size_t cell_index(int state, int symbol, int next_state, Label finality) const {
        if (next_state < 0 || next_state >= n)
            throw std::out_of_range("qtable: successor state out of range");
        return static_cast<std::size_t>(row_index(state, symbol)) * cols() +
               static_cast<std::size_t>(column(next_state, finality));
    }
};

// One chosen transition while processing a word.
struct Step {
    int state;
    int symbol;
    int next_state;
    Label finality;

    friend bool operator==(const Step&, const Step&) = default;
};

using Trajectory = std::vector<Step>;

// Which row the update rule bootstraps from: the row being updated (the
// default) or the row the following step reads from.
enum class Bootstrap { row, successor };

struct Hyperparams {
    double alpha = 0.1;    // learning rate
    double gamma = 0.9;    // discount factor
    double eps_min = 0.1;  // exploration floor
    double reward = 1.0;   // the reward unit r
    int episodes = 200;
    int reprocess_bound = 25;  // processing attempts per word per episode
    std::uint64_t rng_seed = 1;
    Bootstrap bootstrap = Bootstrap::row;

    void validate() const {
        if (!(alpha > 0.0 && alpha <= 1.0))
            throw std::invalid_argument("hyperparams: alpha must be in (0,1]");
        if (!(gamma >= 0.0 && gamma <= 1.0))
            throw std::invalid_argument("hyperparams: gamma must be in [0,1]");
        if (!(eps_min >= 0.0 && eps_min <= 1.0))
            throw std::invalid_argument("hyperparams: eps_min must be in [0,1]");
        if (!(reward > 0.0))
            throw std::invalid_argument("hyperparams: reward must be positive");
        if (episodes < 1)
            throw std::invalid_argument("hyperparams: episodes must be positive");
        if (reprocess_bound < 1)
            throw std::invalid_argument("hyperparams: reprocess bound must be positive");
    }
};

// Control flag for the per-word loop.
enum class Control : int { reprocess = 0, advance = 1, done = 2 };

// Epsilon-greedy action choice with an adaptive rate: epsilon is the row's
// value variance scaled by the 1-based position in the word, clamped into
// [eps_min, 1]. One uniform draw decides the branch; the random branch picks
// a column uniformly.
template <class Rng>
std::pair<int, Label> explore_or_exploit(const QTable& q, int state, int symbol, int position,
                                         const Hyperparams& h, Rng& rng) {
    if (position < 1)
        throw std::invalid_argument("explore_or_exploit: position is 1-based");
    const double variance = q.row_variance(state, symbol);
    const double eps = std::max(h.eps_min, std::min(1.0, static_cast<double>(position) * variance));
    int col;
    if (rng.unit() < eps)
        col = rng.index(q.cols());
    else
        col = q.row_argmax(state, symbol);
    return QTable::decode_column(col);
}

// Reward for the trajectory's own finality prediction.
inline double reward_from_qtable(Label predicted, Label expected, double r) {
    if (predicted != expected)
        return -r / 2.0;
    return expected == Label::accept ? 4.0 * r : 2.0 * r;
}

// Reward for the greedy automaton's verdict on the word.
inline double reward_from_dfa(Label predicted, Label expected, double r) {
    if (predicted != expected)
        return -r / 2.0;
    return expected == Label::accept ? r : 0.0;
}

// Temporal-difference update applied to every step of the trajectory in
// order. The bootstrap max is reread after earlier in-place updates within
// the same call.
inline void update_qtable_in_place(QTable& q, const Trajectory& trajectory, double reward,
                                   const Hyperparams& h) {
    for (std::size_t k = 0; k < trajectory.size(); ++k) {
        const Step& step = trajectory[k];
        double future;
        if (h.bootstrap == Bootstrap::successor) {
            future = k + 1 < trajectory.size()
                         ? q.row_max(trajectory[k + 1].state, trajectory[k + 1].symbol)
                         : 0.0;
        } else {
            future = q.row_max(step.state, step.symbol);
        }
        double& cell = q.at(step.state, step.symbol, step.next_state, step.finality);
        cell += h.alpha * (reward + h.gamma * future - cell);
    }
}

inline QTable update_qtable(QTable q, const Trajectory& trajectory, double reward,
                            const Hyperparams& h) {
    update_qtable_in_place(q, trajectory, reward, h);
    return q;
}

// Debug dump with "state,symbol" row headers and "<state>+/-" column headers.
inline std::string qtable_csv(const QTable& q, const Alphabet& alphabet) {
    if (alphabet.size() != q.alphabet_size)
        throw std::invalid_argument("qtable_csv: alphabet size mismatch");
    std::string out = "state,symbol";
    for (int col = 0; col < q.cols(); ++col) {
        const auto [next_state, finality] = QTable::decode_column(col);
        out += "," + std::to_string(next_state) + (finality == Label::accept ? "+" : "-");
    }
    out += "\n";
    char buf[64];
    for (int state = 0; state < q.n; ++state)
        for (int sym = 0; sym < q.alphabet_size; ++sym) {
            out += std::to_string(state) + "," + alphabet.symbol(sym);
            for (double v : q.row(state, sym)) {
                std::snprintf(buf, sizeof buf, ",%.17g", v);
                out += buf;
            }
            out += "\n";
        }
    return out;
}

}  // namespace qpai

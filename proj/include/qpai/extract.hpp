#pragma once

/*
 * Greedy DFA readout from a Q-table, and sample accuracy. The hypothesis is
 * built by following the greedy policy along the positively labeled sample
 * words only; everything the positives never touch falls into the sink.
 */

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qpai/dfa.hpp"
#include "qpai/qtable.hpp"
#include "qpai/sample.hpp"

namespace qpai {

// States are renumbered in first-visit order (the initial state first), with
// the sink appended last, so equal inputs give identical automata.
inline Dfa dfa_from_q(const QTable& q, const Sample& sample) {
    if (q.alphabet_size != sample.alphabet.size())
        throw std::invalid_argument("dfa_from_q: alphabet size mismatch");
    const int alpha = q.alphabet_size;

    std::vector<std::pair<int, Label>> policy(static_cast<std::size_t>(q.n) * alpha);
    for (int state = 0; state < q.n; ++state)
        for (int sym = 0; sym < alpha; ++sym)
            policy[static_cast<std::size_t>(state) * alpha + sym] =
                QTable::decode_column(q.row_argmax(state, sym));

    std::vector<int> raw_delta(static_cast<std::size_t>(q.n) * alpha, kNoTransition);
    std::vector<std::uint8_t> raw_accept(static_cast<std::size_t>(q.n), 0);
    std::vector<int> visit_order{0};
    std::vector<int> remap(static_cast<std::size_t>(q.n), -1);
    remap[0] = 0;

    for (const auto& [word, label] : sample.entries) {
        if (label != Label::accept)
            continue;
        int state = 0;
        for (int sym : word) {
            const auto [next_state, finality] = policy[static_cast<std::size_t>(state) * alpha + sym];
            raw_delta[static_cast<std::size_t>(state) * alpha + sym] = next_state;
            if (remap[static_cast<std::size_t>(next_state)] == -1) {
                remap[static_cast<std::size_t>(next_state)] = static_cast<int>(visit_order.size());
                visit_order.push_back(next_state);
            }
            if (finality == Label::accept)
                raw_accept[static_cast<std::size_t>(next_state)] = 1;
            state = next_state;
        }
    }

    // The simulation only ever tags successor states; a positively labeled
    // empty word is the one observation that fixes the initial state.
    for (const auto& [word, label] : sample.entries)
        if (word.empty() && label == Label::accept) {
            raw_accept[0] = 1;
            break;
        }

    const int visited = static_cast<int>(visit_order.size());
    PartialDfa partial;
    partial.n_states = visited;
    partial.alphabet_size = alpha;
    partial.delta.assign(static_cast<std::size_t>(visited) * alpha, kNoTransition);
    partial.accepting.assign(static_cast<std::size_t>(visited), 0);
    for (int i = 0; i < visited; ++i) {
        const int raw = visit_order[static_cast<std::size_t>(i)];
        partial.accepting[static_cast<std::size_t>(i)] = raw_accept[static_cast<std::size_t>(raw)];
        for (int sym = 0; sym < alpha; ++sym) {
            const int target = raw_delta[static_cast<std::size_t>(raw) * alpha + sym];
            if (target != kNoTransition)
                partial.delta[static_cast<std::size_t>(i) * alpha + sym] =
                    remap[static_cast<std::size_t>(target)];
        }
    }
    return complete_with_sink(partial);
}

// Fraction of sample entries the automaton classifies correctly.
inline double accuracy(const Dfa& dfa, const Sample& sample) {
    if (sample.entries.empty())
        throw std::invalid_argument("accuracy: empty sample");
    std::size_t correct = 0;
    for (const auto& [word, label] : sample.entries)
        if (run(dfa, word) == label)
            ++correct;
    return static_cast<double>(correct) / static_cast<double>(sample.entries.size());
}

}  // namespace qpai

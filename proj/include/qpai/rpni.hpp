#pragma once

/*
 * RPNI baseline: prefix tree acceptor construction followed by
 * consistency-preserving state merging in canonical (breadth-first,
 * symbol-index) order. Candidate states merge into the lowest-ordered
 * earlier state whose folded result keeps every sample word correctly
 * classified; candidates that merge nowhere are promoted.
 */

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qpai/dfa.hpp"
#include "qpai/sample.hpp"

namespace qpai {

// Tree-shaped partial automaton over the sample's prefix-closed domain.
// States are numbered in canonical order, the root is 0.
struct Pta {
    int alphabet_size = 0;
    std::vector<Obs> labels;
    std::vector<int> children;  // state * alphabet_size + symbol, kNoTransition when absent

    int n_states() const { return static_cast<int>(labels.size()); }
    int child(int state, int symbol) const {
        return children[static_cast<std::size_t>(state) * alphabet_size + symbol];
    }
};

inline Pta build_pta(const Sample& sample) {
    const int alpha = sample.alphabet.size();
    struct Node {
        Obs label = Obs::unknown;
        std::vector<int> child;
    };
    std::vector<Node> nodes(1, Node{Obs::unknown, std::vector<int>(static_cast<std::size_t>(alpha),
                                                                   kNoTransition)});
    for (const auto& [word, label] : sample.entries) {
        int at = 0;
        for (int sym : word) {
            int& slot = nodes[static_cast<std::size_t>(at)].child[static_cast<std::size_t>(sym)];
            if (slot == kNoTransition) {
                slot = static_cast<int>(nodes.size());
                nodes.push_back(Node{Obs::unknown,
                                     std::vector<int>(static_cast<std::size_t>(alpha), kNoTransition)});
            }
            at = slot;
        }
        const Obs want = to_obs(label);
        Obs& have = nodes[static_cast<std::size_t>(at)].label;
        if (have != Obs::unknown && have != want)
            throw std::invalid_argument("build_pta: conflicting labels in the sample");
        have = want;
    }

    // renumber breadth-first so ids follow (length, symbol) order
    std::vector<int> order{0};
    std::vector<int> new_id(nodes.size(), -1);
    new_id[0] = 0;
    for (std::size_t head = 0; head < order.size(); ++head)
        for (int sym = 0; sym < alpha; ++sym) {
            const int child = nodes[static_cast<std::size_t>(order[head])].child[static_cast<std::size_t>(sym)];
            if (child != kNoTransition && new_id[static_cast<std::size_t>(child)] == -1) {
                new_id[static_cast<std::size_t>(child)] = static_cast<int>(order.size());
                order.push_back(child);
            }
        }

    Pta pta;
    pta.alphabet_size = alpha;
    pta.labels.assign(order.size(), Obs::unknown);
    pta.children.assign(order.size() * static_cast<std::size_t>(alpha), kNoTransition);
    for (std::size_t i = 0; i < order.size(); ++i) {
        const Node& node = nodes[static_cast<std::size_t>(order[i])];
        pta.labels[i] = node.label;
        for (int sym = 0; sym < alpha; ++sym)
            if (node.child[static_cast<std::size_t>(sym)] != kNoTransition)
                pta.children[i * static_cast<std::size_t>(alpha) + static_cast<std::size_t>(sym)] =
                    new_id[static_cast<std::size_t>(node.child[static_cast<std::size_t>(sym)])];
    }
    return pta;
}

namespace detail {

struct MergeState {
    int alphabet_size = 0;
    std::vector<Obs> labels;
    std::vector<int> children;

    int& child(int state, int symbol) {
        return children[static_cast<std::size_t>(state) * alphabet_size + symbol];
    }
    int child(int state, int symbol) const {
        return children[static_cast<std::size_t>(state) * alphabet_size + symbol];
    }
};

// Folds the source subtree into the target, cascading where both sides
// define a child. Fails exactly when an accept label meets a reject label.
inline bool fold(MergeState& m, int target, int source) {
    const Obs source_label = m.labels[static_cast<std::size_t>(source)];
    if (source_label != Obs::unknown) {
        Obs& target_label = m.labels[static_cast<std::size_t>(target)];
        if (target_label == Obs::unknown)
            target_label = source_label;
        else if (target_label != source_label)
            return false;
    }
    for (int sym = 0; sym < m.alphabet_size; ++sym) {
        const int source_child = m.child(source, sym);
        if (source_child == kNoTransition)
            continue;
        const int target_child = m.child(target, sym);
        if (target_child == kNoTransition)
            m.child(target, sym) = source_child;
        else if (!fold(m, target_child, source_child))
            return false;
    }
    return true;
}

}  // namespace detail

inline Dfa rpni(const Sample& sample) {
    const Pta pta = build_pta(sample);
    const int alpha = pta.alphabet_size;
    const int n = pta.n_states();

    detail::MergeState m{alpha, pta.labels, pta.children};
    std::vector<std::uint8_t> is_red(static_cast<std::size_t>(n), 0);
    std::vector<std::uint8_t> dead(static_cast<std::size_t>(n), 0);
    std::vector<int> reds{0};
    is_red[0] = 1;

    for (;;) {
        int blue = -1;
        for (int red : reds)
            for (int sym = 0; sym < alpha; ++sym) {
                const int child = m.child(red, sym);
                if (child != kNoTransition && !is_red[static_cast<std::size_t>(child)] &&
                    (blue == -1 || child < blue))
                    blue = child;
            }
        if (blue == -1)
            break;

        bool merged = false;
        for (int red : reds) {
            detail::MergeState trial = m;
            for (int s = 0; s < n; ++s) {
                if (dead[static_cast<std::size_t>(s)])
                    continue;
                for (int sym = 0; sym < alpha; ++sym)
                    if (trial.child(s, sym) == blue)
                        trial.child(s, sym) = red;
            }
            if (detail::fold(trial, red, blue)) {
                m = std::move(trial);
                dead[static_cast<std::size_t>(blue)] = 1;
                merged = true;
                break;
            }
        }
        if (!merged) {
            is_red[static_cast<std::size_t>(blue)] = 1;
            reds.push_back(blue);  // candidates arrive in ascending canonical order
        }
    }

    std::vector<int> dense(static_cast<std::size_t>(n), -1);
    int count = 0;
    for (int red : reds)
        dense[static_cast<std::size_t>(red)] = count++;

    PartialDfa partial;
    partial.n_states = count;
    partial.alphabet_size = alpha;
    partial.delta.assign(static_cast<std::size_t>(count) * alpha, kNoTransition);
    partial.accepting.assign(static_cast<std::size_t>(count), 0);
    for (int red : reds) {
        const int id = dense[static_cast<std::size_t>(red)];
        partial.accepting[static_cast<std::size_t>(id)] =
            m.labels[static_cast<std::size_t>(red)] == Obs::accept ? 1 : 0;
        for (int sym = 0; sym < alpha; ++sym) {
            const int child = m.child(red, sym);
            if (child != kNoTransition)
                partial.delta[static_cast<std::size_t>(id) * alpha + sym] =
                    dense[static_cast<std::size_t>(child)];
        }
    }
    return complete_with_sink(partial);
}

}  // namespace qpai

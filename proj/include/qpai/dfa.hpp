#pragma once

/*
 * Deterministic finite automata over a dense encoding: states are the
 * integers 0..n_states-1, the initial state is always 0, and the transition
 * table is total. Partial automata are totalized by complete_with_sink,
 * which routes every undefined transition into a non-accepting absorbing
 * state. Also provides language equivalence with shortest counterexamples,
 * minimization, and DOT rendering.
 */

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qpai/alphabet.hpp"

namespace qpai {

// Word classification and, equally, the finality tag attached to a state.
enum class Label : int { accept = 0, reject = 1 };

inline char label_char(Label y) { return y == Label::accept ? '+' : '-'; }

inline constexpr int kNoTransition = -1;

struct Dfa {
    int n_states = 1;
    int alphabet_size = 0;
    std::vector<int> delta;               // n_states x alphabet_size, row-major
    std::vector<std::uint8_t> accepting;  // one flag per state
    std::optional<int> sink;

    int next(int state, int symbol) const {
        return delta[static_cast<std::size_t>(state) * alphabet_size + symbol];
    }
    bool is_accepting(int state) const { return accepting[static_cast<std::size_t>(state)] != 0; }

    friend bool operator==(const Dfa&, const Dfa&) = default;
};

// Partial transition table; kNoTransition marks undefined cells.
struct PartialDfa {
    int n_states = 1;
    int alphabet_size = 0;
    std::vector<int> delta;
    std::vector<std::uint8_t> accepting;
    std::optional<int> sink;
};

inline void validate_dfa(const Dfa& dfa) {
    if (dfa.n_states < 1)
        throw std::invalid_argument("dfa: needs at least the initial state");
    if (dfa.alphabet_size < 0)
        throw std::invalid_argument("dfa: negative alphabet size");
    if (dfa.delta.size() != static_cast<std::size_t>(dfa.n_states) * dfa.alphabet_size)
        throw std::invalid_argument("dfa: transition table has the wrong shape");
    for (int target : dfa.delta)
        if (target < 0 || target >= dfa.n_states)
            throw std::invalid_argument("dfa: transition target out of range");
    if (dfa.accepting.size() != static_cast<std::size_t>(dfa.n_states))
        throw std::invalid_argument("dfa: accepting flags have the wrong shape");
    if (dfa.sink) {
        if (*dfa.sink < 0 || *dfa.sink >= dfa.n_states)
            throw std::invalid_argument("dfa: sink id out of range");
        if (dfa.is_accepting(*dfa.sink))
            throw std::invalid_argument("dfa: sink must not accept");
        for (int sym = 0; sym < dfa.alphabet_size; ++sym)
            if (dfa.next(*dfa.sink, sym) != *dfa.sink)
                throw std::invalid_argument("dfa: sink must self-loop");
    }
}

inline Dfa make_dfa(int n_states, int alphabet_size, std::vector<int> delta,
                    const std::vector<int>& accepting_states, std::optional<int> sink = {}) {
    Dfa dfa;
    dfa.n_states = n_states;
    dfa.alphabet_size = alphabet_size;
    dfa.delta = std::move(delta);
    dfa.accepting.assign(n_states > 0 ? static_cast<std::size_t>(n_states) : 0, 0);
    for (int s : accepting_states) {
        if (s < 0 || s >= n_states)
            throw std::invalid_argument("dfa: accepting state out of range");
        dfa.accepting[static_cast<std::size_t>(s)] = 1;
    }
    dfa.sink = sink;
    validate_dfa(dfa);
    return dfa;
}

inline Label run(const Dfa& dfa, std::span<const int> word) {
    int state = 0;
    for (int symbol : word) {
        if (symbol < 0 || symbol >= dfa.alphabet_size)
            throw std::out_of_range("run: symbol index " + std::to_string(symbol) +
                                    " outside alphabet of size " + std::to_string(dfa.alphabet_size));
        state = dfa.next(state, symbol);
    }
    return dfa.is_accepting(state) ? Label::accept : Label::reject;
}

// Totalizes a partial automaton. A sink state is materialized when the input
// does not already designate one; every undefined transition is redirected
// into it and the sink self-loops on the full alphabet. Idempotent thanks to
// the stored sink id.
inline Dfa complete_with_sink(const PartialDfa& partial) {
    const int alpha = partial.alphabet_size;
    if (partial.n_states < 1)
        throw std::invalid_argument("complete_with_sink: needs at least the initial state");
    if (alpha < 0)
        throw std::invalid_argument("complete_with_sink: negative alphabet size");
    if (partial.delta.size() != static_cast<std::size_t>(partial.n_states) * alpha)
        throw std::invalid_argument("complete_with_sink: transition table has the wrong shape");
    if (partial.accepting.size() != static_cast<std::size_t>(partial.n_states))
        throw std::invalid_argument("complete_with_sink: accepting flags have the wrong shape");
    for (int target : partial.delta)
        if (target != kNoTransition && (target < 0 || target >= partial.n_states))
            throw std::invalid_argument("complete_with_sink: transition target out of range");

    Dfa out;
    out.alphabet_size = alpha;
    int bot;
    if (partial.sink) {
        bot = *partial.sink;
        if (bot < 0 || bot >= partial.n_states)
            throw std::invalid_argument("complete_with_sink: sink id out of range");
        if (partial.accepting[static_cast<std::size_t>(bot)])
            throw std::invalid_argument("complete_with_sink: sink must not accept");
        for (int sym = 0; sym < alpha; ++sym) {
            int t = partial.delta[static_cast<std::size_t>(bot) * alpha + sym];
            if (t != kNoTransition && t != bot)
                throw std::invalid_argument("complete_with_sink: sink must self-loop");
        }
        out.n_states = partial.n_states;
        out.delta = partial.delta;
        out.accepting = partial.accepting;
    } else {
        bot = partial.n_states;
        out.n_states = partial.n_states + 1;
        out.delta.assign(static_cast<std::size_t>(out.n_states) * alpha, kNoTransition);
        std::copy(partial.delta.begin(), partial.delta.end(), out.delta.begin());
        out.accepting = partial.accepting;
        out.accepting.push_back(0);
    }
    out.sink = bot;
    for (int sym = 0; sym < alpha; ++sym) {
        for (int s = 0; s < out.n_states; ++s) {
            int& cell = out.delta[static_cast<std::size_t>(s) * alpha + sym];
            if (cell == kNoTransition)
                cell = bot;
        }
        out.delta[static_cast<std::size_t>(bot) * alpha + sym] = bot;
    }
    validate_dfa(out);
    return out;
}

inline Dfa complete_with_sink(const Dfa& dfa) {
    PartialDfa partial{dfa.n_states, dfa.alphabet_size, dfa.delta, dfa.accepting, dfa.sink};
    return complete_with_sink(partial);
}

struct EquivalenceResult {
    bool equivalent = false;
    std::optional<Word> counterexample;  // shortest word the two automata disagree on
};

// Product-construction breadth-first search; symbols are explored in index
// order, so the counterexample is the shortest and lexicographically first.
inline EquivalenceResult equivalent(const Dfa& a, const Dfa& b) {
    if (a.alphabet_size != b.alphabet_size)
        throw std::invalid_argument("equivalent: alphabet size mismatch");
    const int alpha = a.alphabet_size;
    const int nb = b.n_states;
    auto differ = [&](int sa, int sb) { return a.is_accepting(sa) != b.is_accepting(sb); };
    auto pair_id = [&](int sa, int sb) { return sa * nb + sb; };

    std::vector<int> parent(static_cast<std::size_t>(a.n_states) * nb, -2);  // -2 unvisited, -1 root
    std::vector<int> via_symbol(parent.size(), -1);
    auto word_to = [&](int node) {
        Word w;
        while (parent[static_cast<std::size_t>(node)] != -1) {
            w.push_back(via_symbol[static_cast<std::size_t>(node)]);
            node = parent[static_cast<std::size_t>(node)];
        }
        std::reverse(w.begin(), w.end());
        return w;
    };

    if (differ(0, 0))
        return {false, Word{}};
    parent[static_cast<std::size_t>(pair_id(0, 0))] = -1;
    std::vector<int> queue{pair_id(0, 0)};
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const int node = queue[head];
        const int sa = node / nb;
        const int sb = node % nb;
        for (int sym = 0; sym < alpha; ++sym) {
            const int id = pair_id(a.next(sa, sym), b.next(sb, sym));
            if (parent[static_cast<std::size_t>(id)] != -2)
                continue;
            parent[static_cast<std::size_t>(id)] = node;
            via_symbol[static_cast<std::size_t>(id)] = sym;
            if (differ(a.next(sa, sym), b.next(sb, sym)))
                return {false, word_to(id)};
            queue.push_back(id);
        }
    }
    return {true, std::nullopt};
}

// Partition refinement; drops unreachable states and renumbers the quotient
// breadth-first from the initial state's class.
inline Dfa minimize(const Dfa& dfa) {
    validate_dfa(dfa);
    const int alpha = dfa.alphabet_size;

    std::vector<int> order{0};
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(dfa.n_states), 0);
    seen[0] = 1;
    for (std::size_t head = 0; head < order.size(); ++head)
        for (int sym = 0; sym < alpha; ++sym) {
            const int t = dfa.next(order[head], sym);
            if (!seen[static_cast<std::size_t>(t)]) {
                seen[static_cast<std::size_t>(t)] = 1;
                order.push_back(t);
            }
        }

    std::vector<int> cls(static_cast<std::size_t>(dfa.n_states), -1);
    int n_classes = 0;
    {
        int acc_cls = -1;
        int rej_cls = -1;
        for (int s : order) {
            int& c = dfa.is_accepting(s) ? acc_cls : rej_cls;
            if (c == -1)
                c = n_classes++;
            cls[static_cast<std::size_t>(s)] = c;
        }
    }
    for (;;) {
        std::map<std::vector<int>, int> signature_ids;
        std::vector<int> next_cls(static_cast<std::size_t>(dfa.n_states), -1);
        int next_count = 0;
        for (int s : order) {
            std::vector<int> signature;
            signature.reserve(static_cast<std::size_t>(alpha) + 1);
            signature.push_back(cls[static_cast<std::size_t>(s)]);
            for (int sym = 0; sym < alpha; ++sym)
                signature.push_back(cls[static_cast<std::size_t>(dfa.next(s, sym))]);
            auto [it, inserted] = signature_ids.emplace(std::move(signature), next_count);
            if (inserted)
                ++next_count;
            next_cls[static_cast<std::size_t>(s)] = it->second;
        }
        const bool stable = next_count == n_classes;
        cls.swap(next_cls);
        n_classes = next_count;
        if (stable)
            break;
    }

    std::vector<int> representative(static_cast<std::size_t>(n_classes), -1);
    for (int s : order)
        if (representative[static_cast<std::size_t>(cls[static_cast<std::size_t>(s)])] == -1)
            representative[static_cast<std::size_t>(cls[static_cast<std::size_t>(s)])] = s;

    std::vector<int> new_id(static_cast<std::size_t>(n_classes), -1);
    std::vector<int> class_order{cls[0]};
    new_id[static_cast<std::size_t>(cls[0])] = 0;
    for (std::size_t head = 0; head < class_order.size(); ++head) {
        const int rep = representative[static_cast<std::size_t>(class_order[head])];
        for (int sym = 0; sym < alpha; ++sym) {
            const int target = cls[static_cast<std::size_t>(dfa.next(rep, sym))];
            if (new_id[static_cast<std::size_t>(target)] == -1) {
                new_id[static_cast<std::size_t>(target)] = static_cast<int>(class_order.size());
                class_order.push_back(target);
            }
        }
    }

    Dfa out;
    out.n_states = static_cast<int>(class_order.size());
    out.alphabet_size = alpha;
    out.delta.assign(static_cast<std::size_t>(out.n_states) * alpha, 0);
    out.accepting.assign(static_cast<std::size_t>(out.n_states), 0);
    for (int c : class_order) {
        const int sid = new_id[static_cast<std::size_t>(c)];
        const int rep = representative[static_cast<std::size_t>(c)];
        out.accepting[static_cast<std::size_t>(sid)] = dfa.is_accepting(rep) ? 1 : 0;
        for (int sym = 0; sym < alpha; ++sym)
            out.delta[static_cast<std::size_t>(sid) * alpha + sym] =
                new_id[static_cast<std::size_t>(cls[static_cast<std::size_t>(dfa.next(rep, sym))])];
    }
    out.sink.reset();
    for (int s = 0; s < out.n_states && alpha > 0; ++s) {
        if (out.is_accepting(s))
            continue;
        bool absorbing = true;
        for (int sym = 0; sym < alpha; ++sym)
            absorbing = absorbing && out.next(s, sym) == s;
        if (absorbing) {
            out.sink = s;
            break;
        }
    }
    return out;
}

// DOT digraph; accepting states are double-circled and the sink is labeled
// "sink". One edge line per (state, symbol) pair.
inline std::string to_dot(const Dfa& dfa, const Alphabet& alphabet) {
    if (alphabet.size() != dfa.alphabet_size)
        throw std::invalid_argument("to_dot: alphabet size mismatch");
    std::string out;
    out += "digraph dfa {\n";
    out += "  rankdir=LR;\n";
    out += "  __start [shape=point];\n";
    out += "  __start -> s0;\n";
    for (int s = 0; s < dfa.n_states; ++s) {
        const bool is_sink = dfa.sink && *dfa.sink == s;
        out += "  s" + std::to_string(s) + " [shape=" +
               (dfa.is_accepting(s) ? "doublecircle" : "circle") + ", label=\"" +
               (is_sink ? std::string("sink") : std::to_string(s)) + "\"];\n";
    }
    for (int s = 0; s < dfa.n_states; ++s)
        for (int sym = 0; sym < dfa.alphabet_size; ++sym)
            out += "  s" + std::to_string(s) + " -> s" + std::to_string(dfa.next(s, sym)) +
                   " [label=\"" + alphabet.symbol(sym) + "\"];\n";
    out += "}\n";
    return out;
}

}  // namespace qpai

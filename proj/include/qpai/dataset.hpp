#pragma once

/*
 * Training-set generators: characteristic sets built from access strings and
 * pairwise distinguishing suffixes, and seeded random samples labeled by a
 * target automaton.
 */

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "qpai/dfa.hpp"
#include "qpai/random.hpp"
#include "qpai/sample.hpp"

namespace qpai {

// Shortest word reaching each state, breadth-first with symbol-index
// tie-breaking. States unreachable from 0 keep an empty access string;
// callers minimize first, which removes them.
inline std::vector<Word> access_strings(const Dfa& dfa) {
    std::vector<Word> access(static_cast<std::size_t>(dfa.n_states));
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(dfa.n_states), 0);
    std::vector<int> queue{0};
    seen[0] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const int state = queue[head];
        for (int sym = 0; sym < dfa.alphabet_size; ++sym) {
            const int target = dfa.next(state, sym);
            if (seen[static_cast<std::size_t>(target)])
                continue;
            seen[static_cast<std::size_t>(target)] = 1;
            access[static_cast<std::size_t>(target)] = access[static_cast<std::size_t>(state)];
            access[static_cast<std::size_t>(target)].push_back(sym);
            queue.push_back(target);
        }
    }
    return access;
}

// Shortest word accepted from exactly one of the two states.
inline Word distinguishing_suffix(const Dfa& dfa, int s, int t) {
    const int n = dfa.n_states;
    auto differ = [&](int x, int y) { return dfa.is_accepting(x) != dfa.is_accepting(y); };
    if (differ(s, t))
        return Word{};
    std::vector<int> parent(static_cast<std::size_t>(n) * n, -2);
    std::vector<int> via(parent.size(), -1);
    auto pair_id = [&](int x, int y) { return x * n + y; };
    parent[static_cast<std::size_t>(pair_id(s, t))] = -1;
    std::vector<int> queue{pair_id(s, t)};
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const int node = queue[head];
        const int x = node / n;
        const int y = node % n;
        for (int sym = 0; sym < dfa.alphabet_size; ++sym) {
            const int id = pair_id(dfa.next(x, sym), dfa.next(y, sym));
            if (parent[static_cast<std::size_t>(id)] != -2)
                continue;
            parent[static_cast<std::size_t>(id)] = node;
            via[static_cast<std::size_t>(id)] = sym;
            if (differ(id / n, id % n)) {
                Word suffix;
                int at = id;
                while (parent[static_cast<std::size_t>(at)] != -1) {
                    suffix.push_back(via[static_cast<std::size_t>(at)]);
                    at = parent[static_cast<std::size_t>(at)];
                }
                std::reverse(suffix.begin(), suffix.end());
                return suffix;
            }
            queue.push_back(id);
        }
    }
    throw std::logic_error("distinguishing_suffix: states are equivalent");
}

// Access strings crossed with one-symbol extensions and a suffix set that
// separates every pair of states. The result identifies the target for
// merge-based learners and always conforms to it.
inline Sample gen_characteristic(const Dfa& target, const Alphabet& alphabet) {
    if (target.alphabet_size != alphabet.size())
        throw std::invalid_argument("gen_characteristic: alphabet size mismatch");
    const Dfa dfa = minimize(target);
    const std::vector<Word> access = access_strings(dfa);

    std::set<Word> suffixes;
    suffixes.insert(Word{});
    for (int s = 0; s < dfa.n_states; ++s)
        for (int t = s + 1; t < dfa.n_states; ++t)
            suffixes.insert(distinguishing_suffix(dfa, s, t));

    std::vector<Word> words;
    std::set<Word> dedupe;
    auto add = [&](Word w) {
        if (dedupe.insert(w).second)
            words.push_back(std::move(w));
    };
    for (int s = 0; s < dfa.n_states; ++s) {
        for (const Word& suffix : suffixes) {
            Word base = access[static_cast<std::size_t>(s)];
            Word plain = base;
            plain.insert(plain.end(), suffix.begin(), suffix.end());
            add(std::move(plain));
            for (int sym = 0; sym < dfa.alphabet_size; ++sym) {
                Word extended = base;
                extended.push_back(sym);
                extended.insert(extended.end(), suffix.begin(), suffix.end());
                add(std::move(extended));
            }
        }
    }
    return label_with(dfa, alphabet, words);
}

// `count` distinct words with lengths uniform in [0, max_len] and uniform
// symbols, labeled by the target. Deterministic in the seed. Duplicates are
// rejected by resampling with a bounded retry budget.
inline Sample gen_random(const Dfa& target, const Alphabet& alphabet, int count, int max_len,
                         std::uint64_t seed) {
    if (count < 0 || max_len < 0)
        throw std::invalid_argument("gen_random: negative count or max length");
    if (target.alphabet_size != alphabet.size())
        throw std::invalid_argument("gen_random: alphabet size mismatch");
    const int alpha = alphabet.size();

    constexpr unsigned long long kCapacityLimit = 1'000'000'000'000'000'000ULL;
    unsigned long long capacity = 0;
    unsigned long long layer = 1;
    for (int len = 0; len <= max_len; ++len) {
        capacity = std::min(kCapacityLimit, capacity + layer);
        layer = alpha > 0 && layer > kCapacityLimit / static_cast<unsigned long long>(alpha)
                    ? kCapacityLimit
                    : layer * static_cast<unsigned long long>(alpha);
    }
    if (alpha == 0)
        capacity = 1;
    if (static_cast<unsigned long long>(count) > capacity)
        throw std::invalid_argument("gen_random: count exceeds the number of distinct words");

    RandomSource rng(seed);
    std::set<Word> seen;
    std::vector<Word> words;
    words.reserve(static_cast<std::size_t>(count));
    long long budget = 1000 + 200LL * count;
    while (static_cast<int>(words.size()) < count) {
        if (budget-- <= 0)
            throw std::runtime_error("gen_random: resampling budget exhausted");
        const int length = alpha == 0 ? 0 : rng.index(max_len + 1);
        Word word(static_cast<std::size_t>(length));
        for (int& sym : word)
            sym = rng.index(alpha);
        if (seen.insert(word).second)
            words.push_back(std::move(word));
    }
    return label_with(target, alphabet, words);
}

}  // namespace qpai

#pragma once

/*
 * Labeled word samples and their prefix-closed view, plus the Abbadingo-style
 * text exchange format:
 *
 *   line 1:            <word count> <alphabet size>
 *   line 2 (optional): #alphabet <token> ... (one token per symbol index)
 *   then per word:     <label 1|0> <length> <symbol index> ...
 *
 * Label 1 marks accepted words, 0 rejected ones.
 */

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qpai/alphabet.hpp"
#include "qpai/dfa.hpp"

namespace qpai {

// Three-valued observation: the two sample labels plus "don't know".
enum class Obs : int { accept, reject, unknown };

inline Obs to_obs(Label y) { return y == Label::accept ? Obs::accept : Obs::reject; }

struct Sample {
    Alphabet alphabet;
    std::vector<std::pair<Word, Label>> entries;
};

// Validates symbol ranges and rejects conflicting labels; exact duplicates
// are dropped, keeping the first occurrence.
inline Sample make_sample(Alphabet alphabet, std::vector<std::pair<Word, Label>> entries) {
    std::map<Word, Label> seen;
    std::vector<std::pair<Word, Label>> kept;
    kept.reserve(entries.size());
    for (auto& [word, label] : entries) {
        for (int sym : word)
            if (sym < 0 || sym >= alphabet.size())
                throw std::invalid_argument("sample: symbol index outside the alphabet");
        auto [it, inserted] = seen.emplace(word, label);
        if (!inserted) {
            if (it->second != label)
                throw std::invalid_argument("sample: conflicting labels for the same word");
            continue;
        }
        kept.emplace_back(std::move(word), label);
    }
    return Sample{std::move(alphabet), std::move(kept)};
}

using PrefixClosedView = std::map<Word, Obs>;

// All prefixes of all sample words; padding prefixes carry Obs::unknown.
// The empty sample yields the empty map.
inline PrefixClosedView prefix_closure(const Sample& sample) {
    PrefixClosedView view;
    for (const auto& [word, label] : sample.entries) {
        for (std::size_t len = 0; len < word.size(); ++len)
            view.try_emplace(Word(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(len)),
                             Obs::unknown);
        view[word] = to_obs(label);
    }
    return view;
}

inline bool is_conforming(const Dfa& dfa, const Sample& sample) {
    if (dfa.alphabet_size != sample.alphabet.size())
        throw std::invalid_argument("is_conforming: alphabet size mismatch");
    for (const auto& [word, label] : sample.entries)
        if (run(dfa, word) != label)
            return false;
    return true;
}

inline Sample label_with(const Dfa& dfa, const Alphabet& alphabet, const std::vector<Word>& words) {
    if (dfa.alphabet_size != alphabet.size())
        throw std::invalid_argument("label_with: alphabet size mismatch");
    std::vector<std::pair<Word, Label>> entries;
    entries.reserve(words.size());
    for (const Word& word : words)
        entries.emplace_back(word, run(dfa, word));
    return make_sample(alphabet, std::move(entries));
}

inline Sample load_sample(const std::string& text) {
    std::vector<std::string> lines;
    {
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line))
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                lines.push_back(line);
    }
    if (lines.empty())
        throw std::runtime_error("sample: missing header line");

    long long declared = -1;
    long long alpha_size = -1;
    {
        std::istringstream header(lines[0]);
        std::string tail;
        if (!(header >> declared >> alpha_size) || declared < 0 || alpha_size < 0 || (header >> tail))
            throw std::runtime_error("sample: malformed header '" + lines[0] + "'");
    }

    std::size_t pos = 1;
    Alphabet alphabet = Alphabet::indexed(static_cast<int>(alpha_size));
    if (pos < lines.size() && lines[pos].rfind("#alphabet", 0) == 0) {
        std::istringstream tokens(lines[pos].substr(9));
        std::vector<std::string> symbols;
        std::string token;
        while (tokens >> token)
            symbols.push_back(token);
        if (static_cast<long long>(symbols.size()) != alpha_size)
            throw std::runtime_error("sample: alphabet line needs one token per symbol");
        alphabet = Alphabet(std::move(symbols));
        ++pos;
    }

    std::vector<std::pair<Word, Label>> entries;
    entries.reserve(static_cast<std::size_t>(declared));
    for (long long i = 0; i < declared; ++i, ++pos) {
        if (pos >= lines.size())
            throw std::runtime_error("sample: fewer word lines than the header declares");
        std::istringstream fields(lines[pos]);
        int label = -1;
        long long length = -1;
        if (!(fields >> label >> length) || (label != 0 && label != 1) || length < 0)
            throw std::runtime_error("sample: malformed word line '" + lines[pos] + "'");
        Word word(static_cast<std::size_t>(length));
        for (int& sym : word) {
            if (!(fields >> sym))
                throw std::runtime_error("sample: word line shorter than its length field");
            if (sym < 0 || sym >= alpha_size)
                throw std::runtime_error("sample: unknown symbol index " + std::to_string(sym));
        }
        std::string tail;
        if (fields >> tail)
            throw std::runtime_error("sample: word line longer than its length field");
        entries.emplace_back(std::move(word), label == 1 ? Label::accept : Label::reject);
    }
    if (pos != lines.size())
        throw std::runtime_error("sample: trailing content after the declared words");
    return make_sample(std::move(alphabet), std::move(entries));
}

inline std::string save_sample(const Sample& sample) {
    std::string out = std::to_string(sample.entries.size()) + " " +
                      std::to_string(sample.alphabet.size()) + "\n";
    if (!(sample.alphabet == Alphabet::indexed(sample.alphabet.size()))) {
        out += "#alphabet";
        for (const std::string& symbol : sample.alphabet.symbols())
            out += " " + symbol;
        out += "\n";
    }
    for (const auto& [word, label] : sample.entries) {
        out += label == Label::accept ? "1 " : "0 ";
        out += std::to_string(word.size());
        for (int sym : word)
            out += " " + std::to_string(sym);
        out += "\n";
    }
    return out;
}

}  // namespace qpai

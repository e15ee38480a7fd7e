#pragma once

#include <string>
#include <string_view>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

namespace qpai {

// A word is a sequence of symbol indices into an Alphabet.
using Word = std::vector<int>;

// Ordered set of distinct symbol tokens with a dense index.
class Alphabet {
public:
    Alphabet() = default;

    explicit Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
        for (int i = 0; i < static_cast<int>(symbols_.size()); ++i) {
            if (symbols_[i].empty())
                throw std::invalid_argument("alphabet: empty symbol token");
            if (!index_.emplace(symbols_[i], i).second)
                throw std::invalid_argument("alphabet: duplicate symbol '" + symbols_[i] + "'");
        }
    }

    static Alphabet binary() { return Alphabet({"0", "1"}); }

    // Symbols named by their own index: "0", "1", ..., "<size-1>".
    static Alphabet indexed(int size) {
        if (size < 0)
            throw std::invalid_argument("alphabet: negative size");
        std::vector<std::string> symbols;
        symbols.reserve(static_cast<std::size_t>(size));
        for (int i = 0; i < size; ++i)
            symbols.push_back(std::to_string(i));
        return Alphabet(std::move(symbols));
    }

    int size() const { return static_cast<int>(symbols_.size()); }

    const std::string& symbol(int index) const {
        if (index < 0 || index >= size())
            throw std::out_of_range("alphabet: symbol index out of range");
        return symbols_[static_cast<std::size_t>(index)];
    }

    int index_of(std::string_view symbol) const {
        auto it = index_.find(std::string(symbol));
        if (it == index_.end())
            throw std::invalid_argument("alphabet: unknown symbol '" + std::string(symbol) + "'");
        return it->second;
    }

    bool contains(std::string_view symbol) const { return index_.count(std::string(symbol)) != 0; }

    const std::vector<std::string>& symbols() const { return symbols_; }

    friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.symbols_ == b.symbols_; }

private:
    std::vector<std::string> symbols_;
    std::unordered_map<std::string, int> index_;
};

}  // namespace qpai

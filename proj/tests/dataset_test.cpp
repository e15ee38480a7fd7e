#include <gtest/gtest.h>

#include <set>

#include "qpai/dataset.hpp"
#include "qpai/rpni.hpp"
#include "qpai/tomita.hpp"
#include "test_util.hpp"

using namespace qpai;
using testutil::word;

TEST(AccessStrings, ParityAutomaton) {
    const Dfa parity = make_dfa(2, 1, {1, 0}, {0});
    const std::vector<Word> access = access_strings(parity);
    EXPECT_EQ(access[0], Word{});
    EXPECT_EQ(access[1], Word{0});
}

TEST(DistinguishingSuffix, SeparatesStates) {
    const Dfa t1 = tomita(1);
    const Word suffix = distinguishing_suffix(t1, 0, 1);
    EXPECT_TRUE(suffix.empty());  // state 0 accepts, the sink does not

    const Dfa t5 = tomita(5);
    for (int s = 0; s < t5.n_states; ++s)
        for (int t = s + 1; t < t5.n_states; ++t) {
            const Word w = distinguishing_suffix(t5, s, t);
            int from_s = s;
            int from_t = t;
            for (int sym : w) {
                from_s = t5.next(from_s, sym);
                from_t = t5.next(from_t, sym);
            }
            EXPECT_NE(t5.is_accepting(from_s), t5.is_accepting(from_t));
        }
}

TEST(GenCharacteristic, UniversalAcceptorContainsEpsilonAndExtensions) {
    const Dfa universal = make_dfa(1, 2, {0, 0}, {0});
    const Sample sample = gen_characteristic(universal, Alphabet::binary());
    std::set<Word> words;
    for (const auto& [w, label] : sample.entries) {
        EXPECT_EQ(label, Label::accept);
        words.insert(w);
    }
    EXPECT_TRUE(words.count(Word{}));
    EXPECT_TRUE(words.count(word("0")));
    EXPECT_TRUE(words.count(word("1")));
}

TEST(GenCharacteristic, ParityAutomatonCoversBothAccessStrings) {
    const Dfa parity = make_dfa(2, 1, {1, 0}, {0});
    const Sample sample = gen_characteristic(parity, Alphabet({"a"}));
    std::set<Word> words;
    for (const auto& [w, label] : sample.entries)
        words.insert(w);
    EXPECT_TRUE(words.count(Word{}));
    EXPECT_TRUE(words.count(Word{0}));
    EXPECT_TRUE(is_conforming(parity, sample));
}

TEST(GenCharacteristic, ConformsToEveryTomitaTarget) {
    for (int k = 1; k <= 7; ++k) {
        const Sample sample = gen_characteristic(tomita(k), tomita_alphabet());
        EXPECT_TRUE(is_conforming(tomita(k), sample)) << "grammar " << k;
    }
}

TEST(GenCharacteristic, RpniRecoversTomita1) {
    const Sample sample = gen_characteristic(tomita(1), tomita_alphabet());
    EXPECT_TRUE(equivalent(rpni(sample), tomita(1)).equivalent);
}

TEST(GenRandom, CountZeroGivesEmptySample) {
    const Sample sample = gen_random(tomita(2), tomita_alphabet(), 0, 10, 3);
    EXPECT_TRUE(sample.entries.empty());
}

TEST(GenRandom, SameSeedSameSample) {
    const Sample a = gen_random(tomita(2), tomita_alphabet(), 40, 10, 7);
    const Sample b = gen_random(tomita(2), tomita_alphabet(), 40, 10, 7);
    EXPECT_EQ(a.entries, b.entries);
}

TEST(GenRandom, DistinctWordsWithOracleLabels) {
    const Sample sample = gen_random(tomita(2), tomita_alphabet(), 50, 10, 7);
    ASSERT_EQ(sample.entries.size(), 50u);
    std::set<Word> seen;
    for (const auto& [w, label] : sample.entries) {
        EXPECT_TRUE(seen.insert(w).second) << "duplicate word";
        EXPECT_LE(w.size(), 10u);
        EXPECT_EQ(label, run(tomita(2), w));
    }
}

TEST(GenRandom, CountBeyondWordSpaceThrows) {
    // 1 + 2 = 3 distinct words of length <= 1
    EXPECT_THROW(gen_random(tomita(1), tomita_alphabet(), 4, 1, 1), std::invalid_argument);
}

TEST(GenRandom, CanExhaustTheWholeWordSpace) {
    // 1 + 2 + 4 = 7 distinct words of length <= 2
    const Sample sample = gen_random(tomita(1), tomita_alphabet(), 7, 2, 9);
    std::set<Word> seen;
    for (const auto& [w, label] : sample.entries)
        seen.insert(w);
    EXPECT_EQ(seen.size(), 7u);
}

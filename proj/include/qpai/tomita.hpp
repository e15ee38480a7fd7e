#pragma once

// The seven Tomita benchmark languages over {0,1}, each encoded as its
// minimal DFA. Transition rows list the targets for symbol 0 then symbol 1.

#include <stdexcept>

#include "qpai/alphabet.hpp"
#include "qpai/dfa.hpp"

namespace qpai {

inline Alphabet tomita_alphabet() { return Alphabet::binary(); }

inline Dfa tomita(int k) {
    switch (k) {
        case 1:  // 1*
            return make_dfa(2, 2, {1, 0, 1, 1}, {0}, 1);
        case 2:  // (10)*
            return make_dfa(3, 2, {2, 1, 0, 2, 2, 2}, {0}, 2);
        case 3:  // no odd run of 1s followed by an even positive run of 0s
            return make_dfa(5, 2, {0, 1, 3, 2, 0, 1, 4, 1, 4, 4}, {0, 1, 2, 3}, 4);
        case 4:  // no substring 000
            return make_dfa(4, 2, {1, 0, 2, 0, 3, 0, 3, 3}, {0, 1, 2}, 3);
        case 5:  // even number of 0s and even number of 1s
            return make_dfa(4, 2, {1, 2, 0, 3, 3, 0, 2, 1}, {0});
        case 6:  // (#0 - #1) divisible by 3
            return make_dfa(3, 2, {1, 2, 2, 0, 0, 1}, {0});
        case 7:  // 0*1*0*1*
            return make_dfa(5, 2, {0, 1, 2, 1, 2, 3, 4, 3, 4, 4}, {0, 1, 2, 3}, 4);
        default:
            throw std::invalid_argument("tomita: grammar id must be in 1..7");
    }
}

}  // namespace qpai

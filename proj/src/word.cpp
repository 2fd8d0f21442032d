#include "symdyn/word.hpp"

#include "symdyn/error.hpp"

namespace symdyn {

Symbol Word::at(std::int64_t coord) const {
    if (coord < lo() || coord >= hi())
        throw RangeError("shiftspace", "coordinate " + std::to_string(coord) +
                                           " outside word [" + std::to_string(lo()) + "," +
                                           std::to_string(hi()) + ")");
    return symbols[static_cast<std::size_t>(coord - base)];
}

Word Word::slice(std::int64_t lo_coord, std::int64_t hi_coord) const {
    if (lo_coord > hi_coord || !covers(lo_coord, hi_coord))
        throw RangeError("shiftspace", "slice [" + std::to_string(lo_coord) + "," +
                                           std::to_string(hi_coord) + ") not covered");
    auto first = symbols.begin() + (lo_coord - base);
    return Word(std::vector<Symbol>(first, first + (hi_coord - lo_coord)), lo_coord);
}

Word Word::sub(std::size_t pos, std::size_t len) const {
    if (pos + len > symbols.size()) throw RangeError("shiftspace", "sub-word out of range");
    return Word(std::vector<Symbol>(symbols.begin() + pos, symbols.begin() + pos + len));
}

Word concat(const Word& a, const Word& b) {
    Word out = a;
    out.symbols.insert(out.symbols.end(), b.symbols.begin(), b.symbols.end());
    return out;
}

char symbol_char(Symbol s) {
    return s < 10 ? static_cast<char>('0' + s) : static_cast<char>('a' + (s - 10));
}

Word parse_word(std::string_view text) {
    Word w;
    w.symbols.reserve(text.size());
    for (char c : text) {
        if (c >= '0' && c <= '9')
            w.symbols.push_back(static_cast<Symbol>(c - '0'));
        else if (c >= 'a' && c <= 'z')
            w.symbols.push_back(static_cast<Symbol>(10 + c - 'a'));
        else
            throw RangeError("shiftspace", std::string("bad symbol character '") + c + "'");
    }
    return w;
}

std::string to_string(const Word& w) {
    std::string s;
    s.reserve(w.size());
    for (Symbol x : w.symbols) s.push_back(symbol_char(x));
    return s;
}

}  // namespace symdyn

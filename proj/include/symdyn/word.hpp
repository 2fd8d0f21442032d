#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace symdyn {

using Symbol = std::uint8_t;

// A finite block of symbols whose first entry sits at coordinate `base`.
struct Word {
    std::vector<Symbol> symbols;
    std::int64_t base = 0;

    Word() = default;
    explicit Word(std::vector<Symbol> s, std::int64_t b = 0) : symbols(std::move(s)), base(b) {}

    std::size_t size() const { return symbols.size(); }
    bool empty() const { return symbols.empty(); }
    Symbol operator[](std::size_t i) const { return symbols[i]; }
    std::int64_t lo() const { return base; }
    std::int64_t hi() const { return base + static_cast<std::int64_t>(symbols.size()); }

    bool covers(std::int64_t lo_coord, std::int64_t hi_coord) const {
        return lo_coord >= lo() && hi_coord <= hi();
    }
    // Symbol at absolute coordinate; throws RangeError outside [lo, hi).
    Symbol at(std::int64_t coord) const;
    // Sub-word on absolute coordinates [lo, hi), keeping absolute base.
    Word slice(std::int64_t lo_coord, std::int64_t hi_coord) const;
    // Sub-word by index, rebased to 0.
    Word sub(std::size_t pos, std::size_t len) const;

    bool operator==(const Word& o) const { return symbols == o.symbols && base == o.base; }
    bool operator<(const Word& o) const { return symbols < o.symbols; }
};

Word concat(const Word& a, const Word& b);

// Digits 0-9 then a-z; alphabets up to 36 symbols.
Word parse_word(std::string_view text);
std::string to_string(const Word& w);
char symbol_char(Symbol s);

}  // namespace symdyn

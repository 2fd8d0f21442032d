#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "symdyn/dict.hpp"
#include "symdyn/markers.hpp"
#include "symdyn/params.hpp"
#include "symdyn/sft.hpp"
#include "symdyn/word.hpp"

namespace symdyn {

// Renewal parse of [0, length) into N-blocks and length-1 error blocks. The
// final block may be cut short by the end of the word (length < N).
struct BlockParse {
    std::int64_t N = 0;
    std::vector<std::int64_t> starts;
    std::vector<std::int64_t> lengths;
    std::vector<char> flag_d;  // per block: 1 for flag D, 0 for a girl flag
    std::vector<Word> flags;   // girl word when flag_d is 0, empty otherwise

    std::size_t size() const { return starts.size(); }
    bool full(std::size_t j) const { return lengths[j] == N; }
    bool error(std::size_t j) const { return lengths[j] == 1 && N != 1; }
    std::int64_t error_positions() const;
};

// Driven only by `seed`, never by the symbols of x.
BlockParse rokhlin_parse(std::int64_t length, std::int64_t N, double delta, std::uint64_t seed);
// Flag D with probability 1 - eps/2, otherwise a uniformly drawn girl.
void assign_flags(BlockParse& parse, const GirlSet& girls, double eps, std::uint64_t seed);

struct CodedPair {
    Word x, y;
    BlockParse parse;
    std::vector<char> block_boy;  // full block lies in the dictionary domain
    std::vector<char> mask;       // x coordinates recoverable in principle
};

CodedPair encode(const Word& x, const Dictionary& dict, const MarkerScheme& scheme, const ParameterPack& pack,
                 const Sft& target, std::uint64_t seed);

struct DecodeResult {
    Word x_hat;              // same coordinates as y; unmasked symbols are 0
    std::vector<char> mask;  // decoded coordinates
    std::vector<std::int64_t> block_starts;
    std::int64_t candidates = 0, rejected = 0;
    double coverage() const;
};

DecodeResult decode(const Word& y, const Dictionary& dict, const MarkerScheme& scheme, const ParameterPack& pack,
                    const Sft& target);

struct BadSetReport {
    double bs1 = 0, bs2 = 0, bs3 = 0, bs4 = 0, total = 0;
    double bound = 0, slack = 0.01;
    bool ok = false;
};
// Each coordinate is charged to the first applicable class in the order
// error block, girl flag, non-boy block, phase outside the info region.
BadSetReport audit_badset(const CodedPair& pair, const ParameterPack& pack, double slack = 0.01);

double audit_weakstar(const CodedPair& pair, const std::vector<std::pair<Word, Word>>& reference, int kmax,
                      int target_alphabet);

// LZ78 phrase-count estimate ln(c!) / n in nats; biased upward at finite n.
double lz78_entropy(const Word& w);

struct EntropyReport {
    double lz = 0;
    double log_girls_minus_boys = 0, ratio_threshold = 0;
    bool ratio_ok = false;
    double eg_frequency = 0, eg_target = 0;
    bool entropy_gap_ok = false;
};
EntropyReport audit_entropy(const CodedPair& pair, const ParameterPack& pack, double h_source, double h_target,
                            long double log_boys, long double log_girls);

// FNV-1a, 64 bit.
std::uint64_t fnv1a(const std::string& text);
std::string hex64(std::uint64_t v);

// Dictionary file: key=value header, embedded source measure, target SFT
// and target measure, marker, then explicit "B -> G" lines in hall mode.
struct DictionaryBundle {
    ParameterPack pack;
    MarkovMeasure source, target_measure;
    Sft target;
    MarkerScheme scheme;
    std::shared_ptr<Dictionary> dict;
};
std::string serialize_dictionary(const DictionaryBundle& b);
DictionaryBundle parse_dictionary(const std::string& text, const std::string& source = "<dict>");
std::string dictionary_hash(const DictionaryBundle& b);

// Coded stream file: header lines then the y word as digits.
struct CodedFile {
    std::string pack_hash, dict_hash, marker;
    Word y;
};
std::string serialize_coded(const CodedFile& f);
CodedFile parse_coded(const std::string& text, const std::string& source = "<coded>");

}  // namespace symdyn

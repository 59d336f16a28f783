#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "dieudet/error.hpp"

namespace dieudet {

// Finite group as an explicit multiplication table over canonical words.
// Immutable after construction; element code 0 is the identity.
class FiniteGroup {
public:
    enum class Kind { C2, Klein4, Cyclic, Dihedral, H8, Custom };

    static std::shared_ptr<const FiniteGroup> c2();
    static std::shared_ptr<const FiniteGroup> klein4();
    static std::shared_ptr<const FiniteGroup> cyclic(std::uint32_t p);
    static std::shared_ptr<const FiniteGroup> dihedral(std::uint32_t p);
    static std::shared_ptr<const FiniteGroup> h8();

    // Arbitrary table; accepted for plain convolution arithmetic, rejected by
    // the Wedderburn layer.
    static std::shared_ptr<const FiniteGroup> from_table(std::string spec, std::vector<std::string> words,
                                                         std::vector<std::vector<std::uint16_t>> table);

    // "C2" | "Klein4" | "Cp:<p>" | "D2p:<p>" | "H8"
    static std::shared_ptr<const FiniteGroup> parse_spec(const std::string& spec);

    std::size_t size() const { return words_.size(); }
    Kind kind() const { return kind_; }
    std::uint32_t p_param() const { return p_; }
    const std::string& spec() const { return spec_; }

    std::uint16_t identity() const { return 0; }
    std::uint16_t mul(std::uint16_t a, std::uint16_t b) const { return table_[a][b]; }
    std::uint16_t inverse(std::uint16_t g) const { return inv_[g]; }

    const std::string& word(std::uint16_t g) const { return words_[g]; }

    // Word over the generators, e.g. "x^3*y"; identity word "1".
    std::uint16_t parse_word(const std::string& w) const;

    bool same_group(const FiniteGroup& o) const { return this == &o || spec_ == o.spec_; }

private:
    FiniteGroup(Kind kind, std::uint32_t p, std::string spec, std::vector<std::string> words,
                std::vector<std::vector<std::uint16_t>> table,
                std::vector<std::pair<std::string, std::uint16_t>> gens);

    void validate() const;

    Kind kind_;
    std::uint32_t p_;
    std::string spec_;
    std::vector<std::string> words_;
    std::vector<std::vector<std::uint16_t>> table_;
    std::vector<std::uint16_t> inv_;
    std::vector<std::pair<std::string, std::uint16_t>> gens_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

} // namespace dieudet

#include "dieudet/group.hpp"

#include <algorithm>

namespace dieudet {

namespace {

bool is_odd_prime(std::uint32_t p) {
    if (p < 3 || p % 2 == 0) return false;
    for (std::uint32_t d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

std::string power_word(const std::string& gen, std::uint32_t e) {
    if (e == 0) return "1";
    if (e == 1) return gen;
    return gen + "^" + std::to_string(e);
}

std::string join_words(const std::string& a, const std::string& b) {
    if (a == "1") return b;
    if (b == "1") return a;
    return a + "*" + b;
}

} // namespace

FiniteGroup::FiniteGroup(Kind kind, std::uint32_t p, std::string spec, std::vector<std::string> words,
                         std::vector<std::vector<std::uint16_t>> table,
                         std::vector<std::pair<std::string, std::uint16_t>> gens)
    : kind_(kind), p_(p), spec_(std::move(spec)), words_(std::move(words)), table_(std::move(table)),
      gens_(std::move(gens)) {
    validate();
    inv_.assign(words_.size(), 0);
    for (std::uint16_t g = 0; g < words_.size(); ++g) {
        bool found = false;
        for (std::uint16_t h = 0; h < words_.size(); ++h)
            if (table_[g][h] == 0 && table_[h][g] == 0) {
                inv_[g] = h;
                found = true;
                break;
            }
        if (!found) fail(ErrorKind::ParseError, "element '" + words_[g] + "' has no two-sided inverse");
    }
}

void FiniteGroup::validate() const {
    const std::size_t n = words_.size();
    if (n == 0 || table_.size() != n) fail(ErrorKind::ParseError, "malformed multiplication table");
    for (const auto& row : table_) {
        if (row.size() != n) fail(ErrorKind::ParseError, "ragged multiplication table");
        for (std::uint16_t v : row)
            if (v >= n) fail(ErrorKind::ParseError, "table entry out of range");
    }
    for (std::uint16_t g = 0; g < n; ++g)
        if (table_[0][g] != g || table_[g][0] != g) fail(ErrorKind::ParseError, "element 0 is not an identity");
    for (std::uint16_t a = 0; a < n; ++a)
        for (std::uint16_t b = 0; b < n; ++b)
            for (std::uint16_t c = 0; c < n; ++c)
                if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
                    fail(ErrorKind::ParseError, "multiplication table is not associative");
}

std::shared_ptr<const FiniteGroup> FiniteGroup::c2() {
    static std::shared_ptr<const FiniteGroup> g(new FiniteGroup(
        Kind::C2, 0, "C2", {"1", "e"}, {{0, 1}, {1, 0}}, {{"e", 1}}));
    return g;
}

std::shared_ptr<const FiniteGroup> FiniteGroup::klein4() {
    static std::shared_ptr<const FiniteGroup> g(new FiniteGroup(
        Kind::Klein4, 0, "Klein4", {"1", "e", "f", "e*f"},
        {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}}, {{"e", 1}, {"f", 2}}));
    return g;
}

std::shared_ptr<const FiniteGroup> FiniteGroup::cyclic(std::uint32_t p) {
    if (!is_odd_prime(p)) fail(ErrorKind::UnsupportedGroup, "Cp needs an odd prime order");
    std::vector<std::string> words;
    for (std::uint32_t b = 0; b < p; ++b) words.push_back(power_word("g", b));
    std::vector<std::vector<std::uint16_t>> table(p, std::vector<std::uint16_t>(p));
    for (std::uint32_t a = 0; a < p; ++a)
        for (std::uint32_t b = 0; b < p; ++b) table[a][b] = static_cast<std::uint16_t>((a + b) % p);
    return std::shared_ptr<const FiniteGroup>(new FiniteGroup(Kind::Cyclic, p, "Cp:" + std::to_string(p),
                                                              std::move(words), std::move(table), {{"g", 1}}));
}

std::shared_ptr<const FiniteGroup> FiniteGroup::dihedral(std::uint32_t p) {
    if (!is_odd_prime(p)) fail(ErrorKind::UnsupportedGroup, "D2p needs an odd prime p");
    const std::uint32_t n = 2 * p;
    // Code a*p + b stands for x^a y^b; x y x^{-1} = y^{-1}.
    std::vector<std::string> words(n);
    for (std::uint32_t a = 0; a < 2; ++a)
        for (std::uint32_t b = 0; b < p; ++b)
            words[a * p + b] = join_words(a ? "x" : "1", power_word("y", b));
    std::vector<std::vector<std::uint16_t>> table(n, std::vector<std::uint16_t>(n));
    for (std::uint32_t a = 0; a < 2; ++a)
        for (std::uint32_t b = 0; b < p; ++b)
            for (std::uint32_t c = 0; c < 2; ++c)
                for (std::uint32_t d = 0; d < p; ++d) {
                    std::uint32_t aa = (a + c) % 2;
                    std::uint32_t bb = (c ? (p - b) % p : b);
                    bb = (bb + d) % p;
                    table[a * p + b][c * p + d] = static_cast<std::uint16_t>(aa * p + bb);
                }
    return std::shared_ptr<const FiniteGroup>(new FiniteGroup(Kind::Dihedral, p, "D2p:" + std::to_string(p),
                                                              std::move(words), std::move(table),
                                                              {{"x", static_cast<std::uint16_t>(p)}, {"y", 1}}));
}

std::shared_ptr<const FiniteGroup> FiniteGroup::h8() {
    // Code b*4 + a stands for x^a y^b with x^4 = 1, y^2 = x^2, y x y^{-1} = x^{-1}.
    auto make = []() {
        std::vector<std::string> words(8);
        for (std::uint32_t b = 0; b < 2; ++b)
            for (std::uint32_t a = 0; a < 4; ++a) words[b * 4 + a] = join_words(power_word("x", a), b ? "y" : "1");
        std::vector<std::vector<std::uint16_t>> table(8, std::vector<std::uint16_t>(8));
        for (std::uint32_t a = 0; a < 4; ++a)
            for (std::uint32_t b = 0; b < 2; ++b)
                for (std::uint32_t c = 0; c < 4; ++c)
                    for (std::uint32_t d = 0; d < 2; ++d) {
                        // x^a y^b x^c y^d = x^{a + (-1)^b c} y^{b+d}, y^2 = x^2.
                        std::uint32_t aa = (a + (b ? (4 - c) % 4 : c)) % 4;
                        std::uint32_t bb = b + d;
                        if (bb == 2) {
                            aa = (aa + 2) % 4;
                            bb = 0;
                        }
                        table[b * 4 + a][d * 4 + c] = static_cast<std::uint16_t>(bb * 4 + aa);
                    }
        return new FiniteGroup(Kind::H8, 2, "H8", std::move(words), std::move(table), {{"x", 1}, {"y", 4}});
    };
    static std::shared_ptr<const FiniteGroup> g(make());
    return g;
}

std::shared_ptr<const FiniteGroup> FiniteGroup::from_table(std::string spec, std::vector<std::string> words,
                                                           std::vector<std::vector<std::uint16_t>> table) {
    return std::shared_ptr<const FiniteGroup>(
        new FiniteGroup(Kind::Custom, 0, std::move(spec), std::move(words), std::move(table), {}));
}

std::shared_ptr<const FiniteGroup> FiniteGroup::parse_spec(const std::string& spec) {
    if (spec == "C2") return c2();
    if (spec == "Klein4") return klein4();
    if (spec == "H8") return h8();
    auto with_param = [&](const std::string& prefix) -> long {
        if (spec.rfind(prefix, 0) != 0) return -1;
        const std::string num = spec.substr(prefix.size());
        if (num.empty() || num.find_first_not_of("0123456789") != std::string::npos)
            fail(ErrorKind::ParseError, "bad group parameter in \"" + spec + "\"");
        return std::stol(num);
    };
    if (long p = with_param("Cp:"); p > 0) return cyclic(static_cast<std::uint32_t>(p));
    if (long p = with_param("D2p:"); p > 0) return dihedral(static_cast<std::uint32_t>(p));
    fail(ErrorKind::UnsupportedGroup, "unknown group spec \"" + spec + "\"");
}

std::uint16_t FiniteGroup::parse_word(const std::string& w) const {
    if (w.empty()) fail(ErrorKind::ParseError, "empty group word");
    if (w == "1") return identity();
    std::uint16_t acc = identity();
    std::size_t pos = 0;
    while (pos < w.size()) {
        std::size_t star = w.find('*', pos);
        std::string factor = w.substr(pos, star == std::string::npos ? std::string::npos : star - pos);
        std::size_t fcol = pos + 1; // 1-based column of the factor
        if (factor.empty())
            fail(ErrorKind::ParseError, "empty factor at column " + std::to_string(fcol) + " in word \"" + w + "\"");
        std::size_t caret = factor.find('^');
        std::string name = factor.substr(0, caret);
        long expo = 1;
        if (caret != std::string::npos) {
            std::string etext = factor.substr(caret + 1);
            if (etext.empty() || etext.find_first_not_of("0123456789") != std::string::npos)
                fail(ErrorKind::ParseError, "bad exponent at column " + std::to_string(fcol + caret + 1) +
                                                " in word \"" + w + "\"");
            expo = std::stol(etext);
        }
        std::uint16_t base = 0;
        bool ok = false;
        for (const auto& [gname, gcode] : gens_)
            if (gname == name) {
                base = gcode;
                ok = true;
            }
        if (!ok)
            fail(ErrorKind::ParseError,
                 "unknown generator \"" + name + "\" at column " + std::to_string(fcol) + " in word \"" + w + "\"");
        for (long k = 0; k < expo; ++k) acc = mul(acc, base);
        if (star == std::string::npos) break;
        pos = star + 1;
        if (pos >= w.size())
            fail(ErrorKind::ParseError, "trailing '*' at column " + std::to_string(star + 1) + " in word \"" + w + "\"");
    }
    return acc;
}

} // namespace dieudet

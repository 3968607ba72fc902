#include "zdense/word.hpp"

#include <cctype>
#include <cstdlib>

#include "zdense/errors.hpp"

namespace zdense {

void Word::canonicalize() {
    std::vector<Factor> out;
    for (const Factor& f : factors) {
        if (f.gen < 0) fail("IndexOutOfRange", "negative generator index in word");
        if (f.exp == 0) continue;
        // stack discipline: out stays canonical, so a full cancellation just
        // pops and the next factor merges with the newly exposed top
        if (!out.empty() && out.back().gen == f.gen) {
            out.back().exp += f.exp;
            if (out.back().exp == 0) out.pop_back();
        } else {
            out.push_back(f);
        }
    }
    factors = std::move(out);
}

uint64_t Word::length() const {
    uint64_t total = 0;
    for (const Factor& f : factors) total += uint64_t(f.exp < 0 ? -f.exp : f.exp);
    return total;
}

int Word::max_index() const {
    int m = -1;
    for (const Factor& f : factors)
        if (f.gen > m) m = f.gen;
    return m;
}

Word Word::inverse() const {
    Word w;
    for (auto it = factors.rbegin(); it != factors.rend(); ++it)
        w.factors.push_back({it->gen, -it->exp});
    return w; // canonical already: reversal preserves non-adjacency
}

Word Word::operator*(const Word& o) const {
    Word w;
    w.factors = factors;
    w.factors.insert(w.factors.end(), o.factors.begin(), o.factors.end());
    w.canonicalize();
    return w;
}

Word Word::pow(long long e) const {
    if (e == 0) return Word();
    Word base = e > 0 ? *this : inverse();
    uint64_t reps = e > 0 ? uint64_t(e) : (uint64_t(-(e + 1)) + 1);
    Word w;
    w.factors.reserve(base.factors.size() * reps);
    for (uint64_t i = 0; i < reps; i++)
        w.factors.insert(w.factors.end(), base.factors.begin(), base.factors.end());
    w.canonicalize();
    return w;
}

Word commutator(const Word& a, const Word& b) {
    return a.inverse() * b.inverse() * a * b;
}

Word balanced_tree_commutator(const std::vector<Word>& leaves) {
    if (leaves.empty() || (leaves.size() & (leaves.size() - 1)) != 0)
        fail("BadParameter", "leaf count must be a power of two");
    std::vector<Word> layer = leaves;
    while (layer.size() > 1) {
        std::vector<Word> next;
        next.reserve(layer.size() / 2);
        for (size_t i = 0; i < layer.size(); i += 2)
            next.push_back(commutator(layer[i], layer[i + 1]));
        layer = std::move(next);
    }
    return layer[0];
}

std::string Word::str() const {
    if (factors.empty()) return "1";
    std::string s;
    for (size_t i = 0; i < factors.size(); i++) {
        if (i) s += '*';
        s += 'g';
        s += std::to_string(factors[i].gen + 1);
        if (factors[i].exp != 1) {
            s += '^';
            s += std::to_string(factors[i].exp);
        }
    }
    return s;
}

Word Word::parse(const std::string& text) {
    size_t pos = 0;
    auto skip_ws = [&] { while (pos < text.size() && std::isspace((unsigned char)text[pos])) pos++; };
    auto parse_ll = [&]() -> long long {
        size_t start = pos;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) pos++;
        while (pos < text.size() && std::isdigit((unsigned char)text[pos])) pos++;
        if (pos == start || (pos == start + 1 && !std::isdigit((unsigned char)text[start])))
            fail("WordSyntax", "expected integer at position " + std::to_string(start));
        if (pos - start > 18) fail("WordSyntax", "integer literal too long");
        return std::strtoll(text.substr(start, pos - start).c_str(), nullptr, 10);
    };

    skip_ws();
    // the bare identity
    if (pos < text.size() && text[pos] == '1') {
        pos++;
        skip_ws();
        if (pos == text.size()) return Word();
        fail("WordSyntax", "unexpected text after identity word");
    }

    Word w;
    bool expect_factor = true;
    while (pos < text.size()) {
        skip_ws();
        if (pos == text.size()) break;
        if (!expect_factor) {
            if (text[pos] != '*')
                fail("WordSyntax", "expected '*' at position " + std::to_string(pos));
            pos++;
            skip_ws();
        }
        if (pos == text.size() || text[pos] != 'g')
            fail("WordSyntax", "expected generator at position " + std::to_string(pos));
        pos++;
        long long idx = parse_ll();
        if (idx < 1) fail("WordSyntax", "generator index must be positive");
        long long exp = 1;
        if (pos < text.size() && text[pos] == '^') {
            pos++;
            exp = parse_ll();
        }
        w.factors.push_back({int(idx - 1), exp});
        expect_factor = false;
        skip_ws();
    }
    if (expect_factor) fail("WordSyntax", "empty word text (write \"1\" for the identity)");
    w.canonicalize();
    return w;
}

nlohmann::json Word::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const Factor& f : factors)
        arr.push_back(nlohmann::json::array({f.gen + 1, f.exp}));
    return arr;
}

Word Word::from_json(const nlohmann::json& j) {
    if (!j.is_array()) fail("SchemaError", "word must be an array of [index, exponent] pairs");
    Word w;
    for (const auto& item : j) {
        if (!item.is_array() || item.size() != 2 || !item[0].is_number_integer() ||
            !item[1].is_number_integer())
            fail("SchemaError", "word factor must be an [index, exponent] integer pair");
        long long idx = item[0].get<long long>();
        if (idx < 1) fail("SchemaError", "word factor index must be positive");
        w.factors.push_back({int(idx - 1), item[1].get<long long>()});
    }
    w.canonicalize();
    return w;
}

} // namespace zdense

#include "zdense/gen_set.hpp"

#include <random>

#include "zdense/errors.hpp"
#include "zdense/numeric.hpp"

namespace zdense {

GenSet::GenSet(int degree, std::string label, std::vector<IntMatrix> generators)
    : n_(degree), label_(std::move(label)), gens_(std::move(generators)) {
    if (n_ < 1) fail("BadParameter", "degree must be at least 1");
    if (gens_.empty()) fail("BadParameter", "generating set must be nonempty");
    for (size_t i = 0; i < gens_.size(); i++) {
        if (gens_[i].n != n_)
            fail("BadParameter", "generator " + std::to_string(i + 1) +
                                     " has degree " + std::to_string(gens_[i].n) +
                                     ", expected " + std::to_string(n_));
        Int d = gens_[i].det();
        if (d != 1)
            fail("NotDeterminantOne", "generator " + std::to_string(i + 1) +
                                          " has determinant " + d.str());
    }
    invs_.reserve(gens_.size());
    for (const IntMatrix& g : gens_) invs_.push_back(g.inverse_unimodular());
}

const IntMatrix& GenSet::gen(int i) const {
    if (i < 0 || i >= count())
        fail("IndexOutOfRange", "generator index " + std::to_string(i + 1) +
                                    " out of range (have " + std::to_string(count()) + ")");
    return gens_[i];
}

const IntMatrix& GenSet::gen_inverse(int i) const {
    if (i < 0 || i >= count())
        fail("IndexOutOfRange", "generator index " + std::to_string(i + 1) +
                                    " out of range (have " + std::to_string(count()) + ")");
    return invs_[i];
}

IntMatrix GenSet::eval(const Word& w) const {
    IntMatrix acc = IntMatrix::identity(n_);
    for (const Word::Factor& f : w.factors) {
        const IntMatrix& base = f.exp > 0 ? gen(f.gen) : gen_inverse(f.gen);
        uint64_t e = f.exp > 0 ? uint64_t(f.exp) : uint64_t(-(f.exp + 1)) + 1;
        acc = acc * base.pow(e);
    }
    return acc;
}

ModMatrix GenSet::eval_mod(const Word& w, uint64_t m) const {
    ModMatrix acc = ModMatrix::identity(n_, m);
    for (const Word::Factor& f : w.factors) {
        const IntMatrix& base = f.exp > 0 ? gen(f.gen) : gen_inverse(f.gen);
        uint64_t e = f.exp > 0 ? uint64_t(f.exp) : uint64_t(-(f.exp + 1)) + 1;
        acc = acc * ModMatrix::reduce(base, m).pow(e);
    }
    return acc;
}

std::vector<ModMatrix> GenSet::reduced_gens(uint64_t m) const {
    std::vector<ModMatrix> out;
    out.reserve(gens_.size());
    for (const IntMatrix& g : gens_) out.push_back(ModMatrix::reduce(g, m));
    return out;
}

std::vector<ModMatrix> GenSet::reduced_gens_with_inverses(uint64_t m) const {
    std::vector<ModMatrix> out = reduced_gens(m);
    out.reserve(2 * gens_.size());
    for (const IntMatrix& g : invs_) out.push_back(ModMatrix::reduce(g, m));
    return out;
}

nlohmann::json GenSet::to_json() const {
    nlohmann::json gens = nlohmann::json::array();
    for (const IntMatrix& g : gens_) {
        nlohmann::json rows = nlohmann::json::array();
        for (int i = 0; i < n_; i++) {
            nlohmann::json row = nlohmann::json::array();
            for (int j = 0; j < n_; j++) row.push_back(g.at(i, j).str());
            rows.push_back(row);
        }
        gens.push_back(rows);
    }
    return {{"degree", n_}, {"label", label_}, {"generators", gens}};
}

namespace {

Int parse_dec_int(const nlohmann::json& v) {
    if (!v.is_string()) fail("SchemaError", "matrix entry must be a decimal string");
    const std::string& s = v.get_ref<const std::string&>();
    size_t start = (s.size() > 1 && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (s.empty() || start == s.size())
        fail("SchemaError", "matrix entry is not a decimal integer: \"" + s + "\"");
    for (size_t i = start; i < s.size(); i++)
        if (s[i] < '0' || s[i] > '9')
            fail("SchemaError", "matrix entry is not a decimal integer: \"" + s + "\"");
    return Int(s);
}

} // namespace

GenSet GenSet::from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) fail("SchemaError", "group document must be a JSON object");
    for (const char* key : {"degree", "label", "generators"})
        if (!doc.contains(key))
            fail("SchemaError", std::string("group document missing \"") + key + "\"");
    if (!doc["degree"].is_number_integer() || doc["degree"].get<long long>() < 1)
        fail("SchemaError", "\"degree\" must be a positive integer");
    if (!doc["label"].is_string()) fail("SchemaError", "\"label\" must be a string");
    if (!doc["generators"].is_array() || doc["generators"].empty())
        fail("SchemaError", "\"generators\" must be a nonempty array");

    int n = doc["degree"].get<int>();
    std::vector<IntMatrix> gens;
    for (const auto& rows : doc["generators"]) {
        if (!rows.is_array() || int(rows.size()) != n)
            fail("SchemaError", "generator must have " + std::to_string(n) + " rows");
        IntMatrix g(n);
        for (int i = 0; i < n; i++) {
            if (!rows[i].is_array() || int(rows[i].size()) != n)
                fail("SchemaError", "generator row must have " + std::to_string(n) + " entries");
            for (int j = 0; j < n; j++) g.at(i, j) = parse_dec_int(rows[i][j]);
        }
        gens.push_back(std::move(g));
    }
    return GenSet(n, doc["label"].get<std::string>(), std::move(gens));
}

GenSet GenSet::parse(const std::string& json_text) {
    nlohmann::json doc = nlohmann::json::parse(json_text, nullptr, false);
    if (doc.is_discarded()) fail("SchemaError", "input is not valid JSON");
    return from_json(doc);
}

std::string GenSet::dump_canonical() const {
    return to_json().dump(); // nlohmann objects iterate in sorted key order
}

namespace {

/* One matrix entry as a polynomial in the family parameter: value is
   (c[0] + c[1] t + c[2] t^2 + ...) / den. */
struct Entry {
    long den = 1;
    std::vector<long> c;
};

Int eval_entry(const Entry& e, long long t) {
    Int v = 0, power = 1;
    for (long coeff : e.c) {
        v += coeff * power;
        power *= t;
    }
    if (e.den != 1) {
        if (v % e.den != 0)
            fail("ParityError", "entry (" + v.str() + ")/" + std::to_string(e.den) +
                                    " is not an integer at parameter " + std::to_string(t));
        v /= e.den;
    }
    return v;
}

using SymMatrix = std::vector<std::vector<Entry>>;

IntMatrix eval_matrix(const SymMatrix& sym, long long t) {
    int n = int(sym.size());
    IntMatrix out(n);
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) out.at(i, j) = eval_entry(sym[i][j], t);
    return out;
}

// shorthand: constant entry and polynomial-over-denominator entry
Entry k(long v) { return Entry{1, {v}}; }
Entry p(std::vector<long> coeffs, long den = 1) { return Entry{den, std::move(coeffs)}; }

const SymMatrix rho_x = {
    {k(1), k(-2), k(3)},
    {k(0), p({0, 1}), p({-1, -2})},
    {k(0), k(1), k(-2)},
};
const SymMatrix rho_y = {
    {p({-2, -1}), k(-1), k(1)},
    {p({-2, -1}), k(-2), k(3)},
    {k(-1), k(-1), k(2)},
};
const SymMatrix rho_z = {
    {k(0), k(0), k(1)},
    {k(1), k(0), p({0, -1})},
    {k(0), k(1), p({-1, -1})},
};

const SymMatrix h1_a = {
    {k(0), k(0), k(1)},
    {k(1), k(0), k(0)},
    {k(0), k(1), k(0)},
};
const SymMatrix h1_b = {
    {k(1), p({2, -1, 1}), p({3, 0, 1})},
    {k(0), p({-2, 2, -1}), p({-1, 1, -1})},
    {k(0), p({3, -3, 1}), p({1, -2, 1})},
};

const SymMatrix h2_a = {
    {k(1), p({16, 0, 3}, 4), p({18, -3, 3}, 2)},
    {k(0), p({-4, -1, -1}, 2), p({-3, 0, -1})},
    {k(0), p({4, 2, 1}, 4), p({2, 1, 1}, 2)},
};
const SymMatrix h2_b = {
    {k(0), k(0), k(1)},
    {k(1), k(0), k(-1)},
    {k(0), k(1), k(1)},
};

const SymMatrix h3_a = {
    {k(1), k(0), p({-3, -2, -8}), p({-1, 10, 0, 32}), p({-5, 0, -16})},
    {k(0), p({-4, 4}), p({-13, -4}), p({19, 32, 16}), p({-4, 16})},
    {k(0), p({1, -1, 4}), p({3, -2, 8}), p({-2, -6, 0, -32}), p({3, 0, 16})},
    {k(0), p({0, 1}), p({0, 2}), p({1, -2, -8}), p({1, 4})},
    {k(0), k(0), p({0, 3}), p({-3, 3, -12}), k(-2)},
};
const SymMatrix h3_b = {
    {k(0), k(0), p({-3, -2, -8}), p({-1, 10, 0, 32}), p({-5, 0, -16})},
    {k(0), k(1), p({3, 4}), p({-13, -8, -16}), p({4, -16})},
    {k(0), k(0), p({-2, -2, -8}), p({0, 6, 0, 32}), p({-3, 0, -16})},
    {k(1), k(0), p({-2, -2}), p({-1, 2, 8}), p({-1, -4})},
    {p({0, 2}), k(0), p({1, -2}), p({0, -4}), k(1)},
};

} // namespace

GenSet catalog(const std::string& name, long long param) {
    std::string label = name + "(" + std::to_string(param) + ")";
    if (name == "rho_Gamma")
        return GenSet(3, label,
                      {eval_matrix(rho_x, param), eval_matrix(rho_y, param),
                       eval_matrix(rho_z, param)});
    if (name == "rho_F")
        return GenSet(3, label, {eval_matrix(rho_x, param), eval_matrix(rho_y, param)});
    if (name == "h1")
        return GenSet(3, label, {eval_matrix(h1_a, param), eval_matrix(h1_b, param)});
    if (name == "h2")
        return GenSet(3, label, {eval_matrix(h2_a, param), eval_matrix(h2_b, param)});
    if (name == "h3")
        return GenSet(5, label, {eval_matrix(h3_a, param), eval_matrix(h3_b, param)});
    fail("UnknownName", "no catalog family named \"" + name + "\"");
}

IntMatrix random_unimodular(int n, uint64_t seed, int steps) {
    if (n < 2) fail("BadParameter", "degree must be at least 2");
    if (steps < 1) fail("BadParameter", "steps must be at least 1");
    std::mt19937_64 rng(mix_seed(seed, 0x756e696d6f64ULL));
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::uniform_int_distribution<int> mult(1, 6);
    IntMatrix out = IntMatrix::identity(n);
    for (int s = 0; s < steps; s++) {
        int i = pick(rng), j = pick(rng);
        while (j == i) j = pick(rng);
        int m = mult(rng);
        long c = m <= 3 ? m : 3 - m; // 1,2,3,-1,-2,-3
        out = IntMatrix::elementary(n, i, j, c) * out;
    }
    return out;
}

} // namespace zdense

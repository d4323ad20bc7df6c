#include "monoidal/monoid.hpp"

#include <algorithm>
#include <sstream>

#include <nlohmann/json.hpp>

namespace monoidal {

// ---------------------------------------------------------------------------
// ExponentVector

ExponentVector ExponentVector::unit(const std::string& var, const BigInt& exp) {
    ExponentVector v;
    if (exp < 0) throw KernelError(ErrorCode::InvalidArgument, "negative exponent");
    if (exp > 0) v.entries_[var] = exp;
    return v;
}

ExponentVector ExponentVector::from_entries(
    const std::vector<std::pair<std::string, BigInt>>& entries) {
    ExponentVector v;
    for (const auto& [var, exp] : entries) {
        if (exp < 0) throw KernelError(ErrorCode::InvalidArgument, "negative exponent");
        if (exp == 0) continue;
        v.entries_[var] += exp;
        if (v.entries_[var] == 0) v.entries_.erase(var);
    }
    return v;
}

BigInt ExponentVector::at(const std::string& var) const {
    auto it = entries_.find(var);
    return it == entries_.end() ? BigInt(0) : it->second;
}

std::vector<std::string> ExponentVector::variables() const {
    std::vector<std::string> vars;
    vars.reserve(entries_.size());
    for (const auto& [var, exp] : entries_) vars.push_back(var);
    return vars;
}

ExponentVector ExponentVector::plus(const ExponentVector& other) const {
    ExponentVector out = *this;
    for (const auto& [var, exp] : other.entries_) {
        BigInt& slot = out.entries_[var];
        slot += exp;
        if (slot == 0) out.entries_.erase(var);
    }
    return out;
}

std::optional<ExponentVector> ExponentVector::minus(const ExponentVector& other) const {
    ExponentVector out = *this;
    for (const auto& [var, exp] : other.entries_) {
        BigInt have = out.at(var);
        if (have < exp) return std::nullopt;
        if (have == exp)
            out.entries_.erase(var);
        else
            out.entries_[var] = have - exp;
    }
    return out;
}

bool ExponentVector::componentwise_leq(const ExponentVector& other) const {
    for (const auto& [var, exp] : entries_)
        if (exp > other.at(var)) return false;
    return true;
}

BigInt ExponentVector::total_degree() const {
    BigInt sum = 0;
    for (const auto& [var, exp] : entries_) sum += exp;
    return sum;
}

ExponentVector ExponentVector::restricted_to(const std::set<std::string>& vars) const {
    ExponentVector out;
    for (const auto& [var, exp] : entries_)
        if (vars.count(var)) out.entries_[var] = exp;
    return out;
}

std::vector<std::pair<std::string, BigInt>> decompose_exponent(const ExponentVector& v) {
    return {v.entries().begin(), v.entries().end()};
}

BigInt total_degree(const ExponentVector& v) { return v.total_degree(); }

std::string exponent_to_text(const ExponentVector& v) {
    if (v.empty()) return "1";
    std::string out;
    for (const auto& [var, exp] : v.entries()) {
        if (!out.empty()) out += "*";
        out += var;
        if (exp != 1) out += "^" + exp.get_str();
    }
    return out;
}

bool graded_print_less(const ExponentVector& a, const ExponentVector& b) {
    BigInt da = a.total_degree(), db = b.total_degree();
    if (da != db) return da < db;
    auto ia = a.entries().begin(), ea = a.entries().end();
    auto ib = b.entries().begin(), eb = b.entries().end();
    // First variable (by name) where the exponents differ; larger exponent
    // there prints first.
    while (ia != ea || ib != eb) {
        if (ib == eb) return true;   // a has the earlier variable
        if (ia == ea) return false;
        if (ia->first != ib->first) return ia->first < ib->first;
        if (ia->second != ib->second) return ia->second > ib->second;
        ++ia;
        ++ib;
    }
    return false;
}

namespace {

void enumerate_below(const std::vector<std::string>& vars, std::size_t idx, unsigned long budget,
                     ExponentVector acc, std::vector<ExponentVector>& out) {
    if (idx == vars.size()) {
        out.push_back(std::move(acc));
        return;
    }
    for (unsigned long e = 0; e <= budget; ++e) {
        ExponentVector next = e == 0 ? acc : acc.plus(ExponentVector::unit(vars[idx], e));
        enumerate_below(vars, idx + 1, budget - e, std::move(next), out);
    }
}

} // namespace

std::vector<ExponentVector> exponents_below_degree(const std::vector<std::string>& vars,
                                                   unsigned long bound) {
    std::vector<ExponentVector> out;
    if (bound == 0) return out;
    enumerate_below(vars, 0, bound - 1, ExponentVector{}, out);
    std::sort(out.begin(), out.end(), graded_print_less);
    return out;
}

std::vector<ExponentVector> exponents_in_box(const ExponentVector& u) {
    std::vector<ExponentVector> out{ExponentVector{}};
    for (const auto& [var, exp] : u.entries()) {
        unsigned long top = to_ulong(exp, "box exponent");
        std::vector<ExponentVector> next;
        next.reserve(out.size() * (top + 1));
        for (const auto& base : out)
            for (unsigned long e = 0; e <= top; ++e)
                next.push_back(e == 0 ? base : base.plus(ExponentVector::unit(var, e)));
        out = std::move(next);
    }
    return out;
}

// ---------------------------------------------------------------------------
// stable_key encodings: self-delimiting, hence injective and decodable.

namespace {

std::string sized(const std::string& s) { return std::to_string(s.size()) + ":" + s; }

std::string read_sized(const std::string& key, std::size_t& pos) {
    std::size_t colon = key.find(':', pos);
    if (colon == std::string::npos)
        throw KernelError(ErrorCode::InvalidArgument, "malformed stable key");
    std::size_t len = std::stoull(key.substr(pos, colon - pos));
    std::string out = key.substr(colon + 1, len);
    pos = colon + 1 + len;
    return out;
}

std::string read_until(const std::string& key, std::size_t& pos, char stop) {
    std::size_t end = key.find(stop, pos);
    if (end == std::string::npos)
        throw KernelError(ErrorCode::InvalidArgument, "malformed stable key");
    std::string out = key.substr(pos, end - pos);
    pos = end + 1;
    return out;
}

// ---------------------------------------------------------------------------
// Concrete monoids

class ExponentMonoid final : public MonoidStructure {
public:
    std::string signature() const override { return "exponent"; }
    MonoidValue identity() const override { return MonoidValue(ExponentVector{}); }

    MonoidValue op(const MonoidValue& a, const MonoidValue& b) const override {
        return MonoidValue(a.as<ExponentVector>().plus(b.as<ExponentVector>()));
    }

    std::string stable_key(const MonoidValue& v) const override {
        std::string key = "E";
        for (const auto& [var, exp] : v.as<ExponentVector>().entries())
            key += "|" + sized(var) + "^" + exp.get_str() + ";";
        return key;
    }

    MonoidValue decode_key(const std::string& key) const override {
        if (key.empty() || key[0] != 'E')
            throw KernelError(ErrorCode::InvalidArgument, "malformed exponent key");
        ExponentVector v;
        std::size_t pos = 1;
        std::vector<std::pair<std::string, BigInt>> entries;
        while (pos < key.size()) {
            if (key[pos] != '|')
                throw KernelError(ErrorCode::InvalidArgument, "malformed exponent key");
            ++pos;
            std::string var = read_sized(key, pos);
            if (pos >= key.size() || key[pos] != '^')
                throw KernelError(ErrorCode::InvalidArgument, "malformed exponent key");
            ++pos;
            entries.emplace_back(var, BigInt(read_until(key, pos, ';')));
        }
        return MonoidValue(ExponentVector::from_entries(entries));
    }

    bool is_abelian() const override { return true; }

    std::optional<MonoidValue> try_inverse(const MonoidValue& v) const override {
        if (v.as<ExponentVector>().empty()) return identity();
        return std::nullopt;
    }

    std::string to_text(const MonoidValue& v) const override {
        return exponent_to_text(v.as<ExponentVector>());
    }

    nlohmann::json to_json(const MonoidValue& v) const override {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& [var, exp] : v.as<ExponentVector>().entries()) {
            nlohmann::json entry;
            entry["var"] = var;
            if (exp.fits_slong_p())
                entry["exp"] = exp.get_si();
            else
                entry["exp"] = exp.get_str();
            arr.push_back(entry);
        }
        return arr;
    }
};

class WordMonoid final : public MonoidStructure {
public:
    std::string signature() const override { return "word"; }
    MonoidValue identity() const override { return MonoidValue(Word{}); }

    MonoidValue op(const MonoidValue& a, const MonoidValue& b) const override {
        Word out = a.as<Word>();
        const Word& rhs = b.as<Word>();
        out.symbols.insert(out.symbols.end(), rhs.symbols.begin(), rhs.symbols.end());
        return MonoidValue(std::move(out));
    }

    std::string stable_key(const MonoidValue& v) const override {
        std::string key = "W";
        for (const auto& sym : v.as<Word>().symbols) key += "|" + sized(sym);
        return key;
    }

    MonoidValue decode_key(const std::string& key) const override {
        if (key.empty() || key[0] != 'W')
            throw KernelError(ErrorCode::InvalidArgument, "malformed word key");
        Word w;
        std::size_t pos = 1;
        while (pos < key.size()) {
            if (key[pos] != '|')
                throw KernelError(ErrorCode::InvalidArgument, "malformed word key");
            ++pos;
            w.symbols.push_back(read_sized(key, pos));
        }
        return MonoidValue(std::move(w));
    }

    bool is_abelian() const override { return false; }

    std::optional<MonoidValue> try_inverse(const MonoidValue& v) const override {
        if (v.as<Word>().symbols.empty()) return identity();
        return std::nullopt;
    }

    std::string to_text(const MonoidValue& v) const override {
        const Word& w = v.as<Word>();
        if (w.symbols.empty()) return "\xce\xb5"; // epsilon
        bool wide = false;
        for (const auto& s : w.symbols) wide |= s.size() > 1;
        std::string out;
        for (std::size_t i = 0; i < w.symbols.size(); ++i) {
            if (i && wide) out += ".";
            out += w.symbols[i];
        }
        return out;
    }

    nlohmann::json to_json(const MonoidValue& v) const override {
        return nlohmann::json{{"word", v.as<Word>().symbols}};
    }
};

class CyclicMonoid final : public MonoidStructure {
public:
    explicit CyclicMonoid(std::uint64_t order) : order_(order) {
        if (order == 0) throw KernelError(ErrorCode::InvalidArgument, "cyclic order must be >= 1");
    }

    std::string signature() const override { return "cyclic:" + std::to_string(order_); }
    MonoidValue identity() const override { return MonoidValue(CyclicValue{0}); }

    MonoidValue op(const MonoidValue& a, const MonoidValue& b) const override {
        std::uint64_t x = check(a), y = check(b);
        return MonoidValue(CyclicValue{(x + y) % order_});
    }

    std::string stable_key(const MonoidValue& v) const override {
        return "C" + std::to_string(check(v));
    }

    MonoidValue decode_key(const std::string& key) const override {
        if (key.empty() || key[0] != 'C')
            throw KernelError(ErrorCode::InvalidArgument, "malformed cyclic key");
        return MonoidValue(CyclicValue{std::stoull(key.substr(1)) % order_});
    }

    bool is_abelian() const override { return true; }

    // Z/n is a group: every element is invertible.
    std::optional<MonoidValue> try_inverse(const MonoidValue& v) const override {
        std::uint64_t x = check(v);
        return MonoidValue(CyclicValue{x == 0 ? 0 : order_ - x});
    }

    std::string to_text(const MonoidValue& v) const override {
        return "[" + std::to_string(check(v)) + "]";
    }

    nlohmann::json to_json(const MonoidValue& v) const override {
        return nlohmann::json{{"cyclic", check(v)}};
    }

private:
    std::uint64_t check(const MonoidValue& v) const {
        std::uint64_t x = v.as<CyclicValue>().value;
        if (x >= order_)
            throw KernelError(ErrorCode::StructureMismatch, "cyclic value out of range");
        return x;
    }

    std::uint64_t order_;
};

class ProductMonoid final : public MonoidStructure {
public:
    ProductMonoid(MonoidPtr left, MonoidPtr right)
        : left_(std::move(left)), right_(std::move(right)) {}

    std::string signature() const override {
        return "product(" + left_->signature() + "," + right_->signature() + ")";
    }

    MonoidValue identity() const override {
        return make_product(left_->identity(), right_->identity());
    }

    MonoidValue op(const MonoidValue& a, const MonoidValue& b) const override {
        const auto& pa = a.as<ProductValue>();
        const auto& pb = b.as<ProductValue>();
        return make_product(left_->op(*pa.left, *pb.left), right_->op(*pa.right, *pb.right));
    }

    std::string stable_key(const MonoidValue& v) const override {
        const auto& p = v.as<ProductValue>();
        return "P" + sized(left_->stable_key(*p.left)) + sized(right_->stable_key(*p.right));
    }

    MonoidValue decode_key(const std::string& key) const override {
        if (key.empty() || key[0] != 'P')
            throw KernelError(ErrorCode::InvalidArgument, "malformed product key");
        std::size_t pos = 1;
        std::string kl = read_sized(key, pos);
        std::string kr = read_sized(key, pos);
        return make_product(left_->decode_key(kl), right_->decode_key(kr));
    }

    bool is_abelian() const override { return left_->is_abelian() && right_->is_abelian(); }

    std::optional<MonoidValue> try_inverse(const MonoidValue& v) const override {
        const auto& p = v.as<ProductValue>();
        auto il = left_->try_inverse(*p.left);
        auto ir = right_->try_inverse(*p.right);
        if (!il || !ir) return std::nullopt;
        return make_product(*il, *ir);
    }

    std::string to_text(const MonoidValue& v) const override {
        const auto& p = v.as<ProductValue>();
        return "(" + left_->to_text(*p.left) + "," + right_->to_text(*p.right) + ")";
    }

    nlohmann::json to_json(const MonoidValue& v) const override {
        const auto& p = v.as<ProductValue>();
        return nlohmann::json{{"left", left_->to_json(*p.left)}, {"right", right_->to_json(*p.right)}};
    }

    const MonoidPtr& left() const { return left_; }
    const MonoidPtr& right() const { return right_; }

private:
    MonoidPtr left_;
    MonoidPtr right_;
};

} // namespace

std::optional<std::pair<MonoidPtr, MonoidPtr>> product_components(const MonoidPtr& monoid) {
    const auto* p = dynamic_cast<const ProductMonoid*>(monoid.get());
    if (!p) return std::nullopt;
    return std::make_pair(p->left(), p->right());
}

MonoidPtr exponent_monoid() {
    static const MonoidPtr instance = std::make_shared<ExponentMonoid>();
    return instance;
}

MonoidPtr word_monoid() {
    static const MonoidPtr instance = std::make_shared<WordMonoid>();
    return instance;
}

MonoidPtr cyclic_monoid(std::uint64_t order) { return std::make_shared<CyclicMonoid>(order); }

MonoidPtr product_monoid(MonoidPtr left, MonoidPtr right) {
    return std::make_shared<ProductMonoid>(std::move(left), std::move(right));
}

MonoidValue make_product(const MonoidValue& left, const MonoidValue& right) {
    return MonoidValue(ProductValue{std::make_shared<MonoidValue>(left),
                                    std::make_shared<MonoidValue>(right)});
}

} // namespace monoidal

#include "monoidal/ring.hpp"

#include <nlohmann/json.hpp>

#include "monoidal/format.hpp"

namespace monoidal {

namespace {

template <typename T>
const T& get_checked(const Value& v, const char* ring_name) {
    const T* p = std::get_if<T>(&v);
    if (!p)
        throw KernelError(ErrorCode::StructureMismatch,
                          std::string("value does not belong to ring ") + ring_name);
    return *p;
}

std::string rat_text(const BigRat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string rat_json(const BigRat& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

class IntegerRing final : public RingDescriptor {
public:
    std::string signature() const override { return "int"; }
    Value zero() const override { return BigInt(0); }
    Value one() const override { return BigInt(1); }

    Value add(const Value& a, const Value& b) const override {
        return BigInt(get_checked<BigInt>(a, "int") + get_checked<BigInt>(b, "int"));
    }
    Value neg(const Value& a) const override { return BigInt(-get_checked<BigInt>(a, "int")); }
    Value mul(const Value& a, const Value& b) const override {
        return BigInt(get_checked<BigInt>(a, "int") * get_checked<BigInt>(b, "int"));
    }
    bool equal(const Value& a, const Value& b) const override {
        return get_checked<BigInt>(a, "int") == get_checked<BigInt>(b, "int");
    }
    bool is_commutative() const override { return true; }
    BigInt characteristic() const override { return 0; }

    std::optional<Value> try_invert(const Value& a) const override {
        const BigInt& z = get_checked<BigInt>(a, "int");
        if (z == 1 || z == -1) return Value(z);
        return std::nullopt;
    }

    Value from_integer(const BigInt& n) const override { return n; }
    std::string to_text(const Value& a) const override {
        return get_checked<BigInt>(a, "int").get_str();
    }
    nlohmann::json to_json(const Value& a) const override {
        return get_checked<BigInt>(a, "int").get_str();
    }
};

class RationalRing final : public RingDescriptor {
public:
    std::string signature() const override { return "rat"; }
    Value zero() const override { return BigRat(0); }
    Value one() const override { return BigRat(1); }

    Value add(const Value& a, const Value& b) const override {
        return BigRat(get_checked<BigRat>(a, "rat") + get_checked<BigRat>(b, "rat"));
    }
    Value neg(const Value& a) const override { return BigRat(-get_checked<BigRat>(a, "rat")); }
    Value mul(const Value& a, const Value& b) const override {
        return BigRat(get_checked<BigRat>(a, "rat") * get_checked<BigRat>(b, "rat"));
    }
    bool equal(const Value& a, const Value& b) const override {
        return get_checked<BigRat>(a, "rat") == get_checked<BigRat>(b, "rat");
    }
    bool is_commutative() const override { return true; }
    BigInt characteristic() const override { return 0; }

    std::optional<Value> try_invert(const Value& a) const override {
        const BigRat& q = get_checked<BigRat>(a, "rat");
        if (q == 0) return std::nullopt;
        return Value(BigRat(BigRat(1) / q));
    }

    Value from_integer(const BigInt& n) const override { return BigRat(n); }
    std::string to_text(const Value& a) const override {
        return rat_text(get_checked<BigRat>(a, "rat"));
    }
    nlohmann::json to_json(const Value& a) const override {
        return rat_json(get_checked<BigRat>(a, "rat"));
    }
};

class GaussianRing final : public RingDescriptor {
public:
    std::string signature() const override { return "gauss"; }
    Value zero() const override { return Gaussian{BigRat(0), BigRat(0)}; }
    Value one() const override { return Gaussian{BigRat(1), BigRat(0)}; }

    Value add(const Value& a, const Value& b) const override {
        const Gaussian& x = get_checked<Gaussian>(a, "gauss");
        const Gaussian& y = get_checked<Gaussian>(b, "gauss");
        return Gaussian{BigRat(x.re + y.re), BigRat(x.im + y.im)};
    }
    Value neg(const Value& a) const override {
        const Gaussian& x = get_checked<Gaussian>(a, "gauss");
        return Gaussian{BigRat(-x.re), BigRat(-x.im)};
    }
    Value mul(const Value& a, const Value& b) const override {
        const Gaussian& x = get_checked<Gaussian>(a, "gauss");
        const Gaussian& y = get_checked<Gaussian>(b, "gauss");
        // (a + b i)(c + d i) = (ac - bd) + (ad + bc) i
        return Gaussian{BigRat(x.re * y.re - x.im * y.im), BigRat(x.re * y.im + x.im * y.re)};
    }
    bool equal(const Value& a, const Value& b) const override {
        return get_checked<Gaussian>(a, "gauss") == get_checked<Gaussian>(b, "gauss");
    }
    bool is_commutative() const override { return true; }
    BigInt characteristic() const override { return 0; }

    std::optional<Value> try_invert(const Value& a) const override {
        const Gaussian& x = get_checked<Gaussian>(a, "gauss");
        BigRat norm = x.re * x.re + x.im * x.im;
        if (norm == 0) return std::nullopt;
        return Value(Gaussian{BigRat(x.re / norm), BigRat(-x.im / norm)});
    }

    Value from_integer(const BigInt& n) const override { return Gaussian{BigRat(n), BigRat(0)}; }

    std::string to_text(const Value& a) const override {
        const Gaussian& x = get_checked<Gaussian>(a, "gauss");
        if (x.im == 0) return rat_text(x.re);
        std::string im_mag = rat_text(BigRat(abs(x.im)));
        std::string im_part = im_mag == "1" ? "i" : im_mag + "*i";
        if (x.re == 0) return (x.im < 0 ? "-" : "") + im_part;
        return rat_text(x.re) + (x.im < 0 ? " - " : " + ") + im_part;
    }

    nlohmann::json to_json(const Value& a) const override {
        const Gaussian& x = get_checked<Gaussian>(a, "gauss");
        return nlohmann::json{{"re", rat_json(x.re)}, {"im", rat_json(x.im)}};
    }
};

class ModularRing final : public RingDescriptor {
public:
    explicit ModularRing(std::uint64_t modulus) : mod_(modulus) {
        if (modulus < 2)
            throw KernelError(ErrorCode::InvalidArgument, "modulus must be >= 2");
    }

    std::string signature() const override { return "mod:" + std::to_string(mod_); }
    Value zero() const override { return ModIntValue{mod_, 0}; }
    Value one() const override { return ModIntValue{mod_, 1 % mod_}; }

    Value add(const Value& a, const Value& b) const override {
        unsigned __int128 s = (unsigned __int128)check(a) + check(b);
        return ModIntValue{mod_, (std::uint64_t)(s % mod_)};
    }
    Value neg(const Value& a) const override {
        std::uint64_t x = check(a);
        return ModIntValue{mod_, x == 0 ? 0 : mod_ - x};
    }
    Value mul(const Value& a, const Value& b) const override {
        unsigned __int128 p = (unsigned __int128)check(a) * check(b);
        return ModIntValue{mod_, (std::uint64_t)(p % mod_)};
    }
    bool equal(const Value& a, const Value& b) const override { return check(a) == check(b); }
    bool is_commutative() const override { return true; }
    BigInt characteristic() const override { return BigInt(static_cast<unsigned long>(mod_)); }

    std::optional<Value> try_invert(const Value& a) const override {
        std::uint64_t x = check(a);
        // Extended Euclid on (x, mod).
        std::int64_t t = 0, new_t = 1;
        std::uint64_t r = mod_, new_r = x;
        while (new_r != 0) {
            std::uint64_t q = r / new_r;
            std::int64_t tmp_t = t - (std::int64_t)q * new_t;
            t = new_t;
            new_t = tmp_t;
            std::uint64_t tmp_r = r - q * new_r;
            r = new_r;
            new_r = tmp_r;
        }
        if (r != 1) return std::nullopt;
        std::int64_t res = t % (std::int64_t)mod_;
        if (res < 0) res += (std::int64_t)mod_;
        return Value(ModIntValue{mod_, (std::uint64_t)res});
    }

    Value from_integer(const BigInt& n) const override {
        BigInt m(static_cast<unsigned long>(mod_));
        BigInt r = n % m;
        if (r < 0) r += m;
        return ModIntValue{mod_, r.get_ui()};
    }

    std::string to_text(const Value& a) const override { return std::to_string(check(a)); }

    nlohmann::json to_json(const Value& a) const override {
        return nlohmann::json{{"mod", mod_}, {"val", check(a)}};
    }

private:
    std::uint64_t check(const Value& v) const {
        const ModIntValue& m = get_checked<ModIntValue>(v, "mod");
        if (m.mod != mod_)
            throw KernelError(ErrorCode::StructureMismatch, "mixed moduli");
        return m.val;
    }

    std::uint64_t mod_;
};

} // namespace

Value RingDescriptor::pow(const Value& a, const BigInt& n) const {
    if (n < 0) throw KernelError(ErrorCode::InvalidArgument, "negative power");
    Value result = one();
    Value base = a;
    BigInt e = n;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) result = mul(result, base);
        e >>= 1;
        if (e > 0) base = mul(base, base);
    }
    return result;
}

RingPtr integer_ring() {
    static const RingPtr instance = std::make_shared<IntegerRing>();
    return instance;
}

RingPtr rational_ring() {
    static const RingPtr instance = std::make_shared<RationalRing>();
    return instance;
}

RingPtr gaussian_ring() {
    static const RingPtr instance = std::make_shared<GaussianRing>();
    return instance;
}

RingPtr modular_ring(std::uint64_t modulus) { return std::make_shared<ModularRing>(modulus); }

Value make_gaussian(const BigRat& re, const BigRat& im) {
    BigRat r = re, i = im;
    r.canonicalize();
    i.canonicalize();
    return Gaussian{r, i};
}

Value make_modular(std::uint64_t modulus, std::uint64_t val) {
    if (modulus < 2) throw KernelError(ErrorCode::InvalidArgument, "modulus must be >= 2");
    return ModIntValue{modulus, val % modulus};
}

Value invert_or_throw(const RingDescriptor& r, const Value& a) {
    auto inv = r.try_invert(a);
    if (!inv)
        throw KernelError(ErrorCode::NotAUnit,
                          r.to_text(a) + " is not a unit of " + r.signature());
    return *inv;
}

CoefDisplay coefficient_display(const RingDescriptor& ring, const Value& v) {
    CoefDisplay d;
    if (const BigInt* z = std::get_if<BigInt>(&v)) {
        d.sign = *z < 0 ? -1 : 1;
        d.magnitude = BigInt(abs(*z)).get_str();
    } else if (const BigRat* q = std::get_if<BigRat>(&v)) {
        d.sign = *q < 0 ? -1 : 1;
        d.magnitude = rat_text(BigRat(abs(*q)));
    } else if (const Gaussian* g = std::get_if<Gaussian>(&v)) {
        if (g->im == 0) {
            d.sign = g->re < 0 ? -1 : 1;
            d.magnitude = rat_text(BigRat(abs(g->re)));
        } else if (g->re == 0) {
            d.sign = g->im < 0 ? -1 : 1;
            BigRat mag = abs(g->im);
            d.magnitude = mag == 1 ? "i" : rat_text(mag) + "*i";
        } else {
            d.composite = true;
            d.magnitude = ring.to_text(v);
        }
    } else if (const ModIntValue* m = std::get_if<ModIntValue>(&v)) {
        d.magnitude = std::to_string(m->val);
    } else {
        d.composite = true;
        d.magnitude = ring.to_text(v);
    }
    return d;
}

std::string format_term_sequence(const RingDescriptor& ring,
                                 const std::vector<std::pair<std::string, Value>>& terms) {
    if (terms.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [mono, coef] : terms) {
        CoefDisplay d = coefficient_display(ring, coef);
        out += first ? (d.sign < 0 ? "-" : "") : (d.sign < 0 ? " - " : " + ");
        if (mono.empty()) {
            if (d.composite && terms.size() > 1)
                out += "(" + d.magnitude + ")";
            else
                out += d.magnitude;
        } else if (!d.composite && d.magnitude == "1") {
            out += mono;
        } else {
            out += (d.composite ? "(" + d.magnitude + ")" : d.magnitude) + "*" + mono;
        }
        first = false;
    }
    return out;
}

RingAxiomReport ring_axiom_check(const RingDescriptor& r,
                                 const std::vector<std::array<Value, 3>>& samples) {
    RingAxiomReport report;
    auto fail = [&report](bool& flag, const std::string& what, std::size_t idx) {
        flag = false;
        if (report.failures.size() < 16)
            report.failures.push_back(what + " at sample " + std::to_string(idx));
    };
    const Value zero = r.zero();
    const Value one = r.one();
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& [a, b, c] = samples[i];
        if (!r.equal(r.add(r.add(a, b), c), r.add(a, r.add(b, c))))
            fail(report.add_associative, "(a+b)+c != a+(b+c)", i);
        if (!r.equal(r.add(a, b), r.add(b, a)))
            fail(report.add_commutative, "a+b != b+a", i);
        if (!r.equal(r.add(a, zero), a))
            fail(report.add_identity, "a+0 != a", i);
        if (!r.equal(r.add(a, r.neg(a)), zero))
            fail(report.add_inverse, "a+(-a) != 0", i);
        if (!r.equal(r.mul(r.mul(a, b), c), r.mul(a, r.mul(b, c))))
            fail(report.mul_associative, "(ab)c != a(bc)", i);
        if (!r.equal(r.mul(a, one), a) || !r.equal(r.mul(one, a), a))
            fail(report.mul_identity, "a*1 != a or 1*a != a", i);
        if (!r.equal(r.mul(a, r.add(b, c)), r.add(r.mul(a, b), r.mul(a, c))) ||
            !r.equal(r.mul(r.add(a, b), c), r.add(r.mul(a, c), r.mul(b, c))))
            fail(report.distributive, "distributivity", i);
        if (r.is_commutative() && !r.equal(r.mul(a, b), r.mul(b, a)))
            fail(report.mul_commutative, "ab != ba", i);
    }
    return report;
}

} // namespace monoidal

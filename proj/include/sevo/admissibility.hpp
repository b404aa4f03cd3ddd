#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "sevo/model.hpp"
#include "sevo/rational.hpp"

namespace sevo {

// Interval of the real line with rational endpoints; an absent endpoint is infinite.
class RationalInterval {
public:
    static RationalInterval all() { return RationalInterval(); }
    static RationalInterval empty() {
        RationalInterval r;
        r.empty_ = true;
        return r;
    }
    static RationalInterval closed_from(Rational a) { return make(a, false, std::nullopt, true); }
    static RationalInterval open_from(Rational a) { return make(a, true, std::nullopt, true); }
    static RationalInterval closed(Rational a, Rational b) { return make(a, false, b, false); }

    static RationalInterval make(std::optional<Rational> lo, bool lo_open, std::optional<Rational> hi, bool hi_open) {
        RationalInterval r;
        r.lo_ = lo;
        r.hi_ = hi;
        r.lo_open_ = lo ? lo_open : true;
        r.hi_open_ = hi ? hi_open : true;
        r.normalize();
        return r;
    }

    bool is_empty() const { return empty_; }
    const std::optional<Rational>& lower() const { return lo_; }
    const std::optional<Rational>& upper() const { return hi_; }
    bool lower_open() const { return lo_open_; }
    bool upper_open() const { return hi_open_; }

    bool contains(const Rational& x) const {
        if (empty_) return false;
        if (lo_ && (x < *lo_ || (lo_open_ && x == *lo_))) return false;
        if (hi_ && (x > *hi_ || (hi_open_ && x == *hi_))) return false;
        return true;
    }

    RationalInterval intersect(const RationalInterval& o) const {
        if (empty_ || o.empty_) return empty();
        RationalInterval r;
        // larger lower bound wins; on a tie the open side wins
        if (!lo_) {
            r.lo_ = o.lo_;
            r.lo_open_ = o.lo_open_;
        } else if (!o.lo_) {
            r.lo_ = lo_;
            r.lo_open_ = lo_open_;
        } else if (*lo_ == *o.lo_) {
            r.lo_ = lo_;
            r.lo_open_ = lo_open_ || o.lo_open_;
        } else {
            const bool mine = *lo_ > *o.lo_;
            r.lo_ = mine ? lo_ : o.lo_;
            r.lo_open_ = mine ? lo_open_ : o.lo_open_;
        }
        if (!hi_) {
            r.hi_ = o.hi_;
            r.hi_open_ = o.hi_open_;
        } else if (!o.hi_) {
            r.hi_ = hi_;
            r.hi_open_ = hi_open_;
        } else if (*hi_ == *o.hi_) {
            r.hi_ = hi_;
            r.hi_open_ = hi_open_ || o.hi_open_;
        } else {
            const bool mine = *hi_ < *o.hi_;
            r.hi_ = mine ? hi_ : o.hi_;
            r.hi_open_ = mine ? hi_open_ : o.hi_open_;
        }
        r.normalize();
        return r;
    }

    // "[4, inf)", "(317/79, inf)", "empty"
    std::string str() const {
        if (empty_) return "empty";
        std::string s = lo_open_ ? "(" : "[";
        s += lo_ ? lo_->str() : "-inf";
        s += ", ";
        s += hi_ ? hi_->str() : "inf";
        s += hi_open_ ? ")" : "]";
        return s;
    }

    friend bool operator==(const RationalInterval& a, const RationalInterval& b) {
        if (a.empty_ || b.empty_) return a.empty_ == b.empty_;
        return a.lo_ == b.lo_ && a.hi_ == b.hi_ && a.lo_open_ == b.lo_open_ && a.hi_open_ == b.hi_open_;
    }

private:
    std::optional<Rational> lo_, hi_;
    bool lo_open_ = true, hi_open_ = true, empty_ = false;

    void normalize() {
        if (lo_ && hi_ && (*lo_ > *hi_ || (*lo_ == *hi_ && (lo_open_ || hi_open_)))) {
            lo_.reset();
            hi_.reset();
            empty_ = true;
        }
    }
};

inline void to_json(nlohmann::json& j, const RationalInterval& r) {
    if (r.is_empty()) {
        j = nlohmann::json{{"empty", true}};
        return;
    }
    j = nlohmann::json{{"empty", false},
                       {"lower", r.lower() ? nlohmann::json(r.lower()->str()) : nlohmann::json("-inf")},
                       {"upper", r.upper() ? nlohmann::json(r.upper()->str()) : nlohmann::json("inf")},
                       {"lower_open", r.lower_open()},
                       {"upper_open", r.upper_open()},
                       {"text", r.str()}};
}

inline void from_json(const nlohmann::json& j, RationalInterval& r) {
    if (j.at("empty").get<bool>()) {
        r = RationalInterval::empty();
        return;
    }
    auto endpoint = [](const std::string& s) -> std::optional<Rational> {
        if (s == "inf" || s == "-inf") return std::nullopt;
        return Rational::parse(s);
    };
    r = RationalInterval::make(endpoint(j.at("lower").get<std::string>()), j.at("lower_open").get<bool>(),
                               endpoint(j.at("upper").get<std::string>()), j.at("upper_open").get<bool>());
}

// Raised when the parameters fall outside a theorem's hypotheses.
class GateViolation : public std::invalid_argument {
public:
    GateViolation(std::string gate, const std::string& what)
        : std::invalid_argument(what), gate_(std::move(gate)) {}
    const std::string& gate() const { return gate_; }

private:
    std::string gate_;
};

struct ConditionResult {
    std::string name;
    std::string formula;
    RationalInterval interval;
    bool satisfied = true; // false when the condition excludes every p
};

struct TheoremReport {
    Theorem theorem = Theorem::T2_1;
    std::vector<ConditionResult> conditions;
    RationalInterval result;
    std::vector<std::string> notes;
};

inline void to_json(nlohmann::json& j, const ConditionResult& c) {
    j = nlohmann::json{{"name", c.name}, {"formula", c.formula}, {"interval", c.interval}, {"satisfied", c.satisfied}};
}

inline void from_json(const nlohmann::json& j, ConditionResult& c) {
    c.name = j.at("name").get<std::string>();
    c.formula = j.at("formula").get<std::string>();
    c.interval = j.at("interval").get<RationalInterval>();
    c.satisfied = j.at("satisfied").get<bool>();
}

inline void to_json(nlohmann::json& j, const TheoremReport& r) {
    j = nlohmann::json{{"theorem", to_string(r.theorem)},
                       {"conditions", r.conditions},
                       {"result", r.result},
                       {"notes", r.notes}};
}

inline void from_json(const nlohmann::json& j, TheoremReport& r) {
    r.theorem = theorem_from_string(j.at("theorem").get<std::string>());
    r.conditions = j.at("conditions").get<std::vector<ConditionResult>>();
    r.result = j.at("result").get<RationalInterval>();
    r.notes = j.at("notes").get<std::vector<std::string>>();
}

namespace detail {

inline void require_gate(bool ok, const std::string& gate, const std::string& msg) {
    if (!ok) throw GateViolation(gate, gate + ": " + msg);
}

// p > 1 + max{2 m delta (1 + kappa), n - (m/q) n + tail} / (n - 2 m delta kappa)
inline void exponent_condition(TheoremReport& rep, const ModelParams& p, const NormSetup& ns, const Rational& kappa,
                               const Rational& tail, const char* kappa_name, const char* tail_text) {
    const Rational n(p.n()), m = ns.m(), q = ns.q(), d = p.delta_q();
    const Rational denom = n - Rational(2) * m * d * kappa;
    const std::string formula = std::string("p > 1 + max{2 m delta (1 + ") + kappa_name + "), n - (m/q) n + " +
                                tail_text + "} / (n - 2 m delta " + kappa_name + ")";
    if (denom.sign() <= 0) {
        rep.conditions.push_back({"exponent", formula, RationalInterval::empty(), false});
        rep.notes.push_back("dimension too small for this theorem: n - 2 m delta " + std::string(kappa_name) + " = " +
                            denom.str() + " <= 0");
        return;
    }
    const Rational b1 = Rational(2) * m * d * (Rational(1) + kappa);
    const Rational b2 = n - m / q * n + tail;
    if (b1 == b2)
        rep.notes.push_back(std::string("max tie: branches 2 m delta (1 + ") + kappa_name + ") and n - (m/q) n + " +
                            tail_text + " both equal " + b1.str());
    const Rational lo = Rational(1) + rmax(b1, b2) / denom;
    rep.conditions.push_back({"exponent", formula, RationalInterval::open_from(lo), true});
}

inline void push_interval(TheoremReport& rep, std::string name, std::string formula, RationalInterval iv) {
    const bool ok = !iv.is_empty();
    rep.conditions.push_back({std::move(name), std::move(formula), std::move(iv), ok});
}

} // namespace detail

// Admissible range of the power p for one existence theorem. s is ignored
// (and may be absent) for T2_1, where the regularity is fixed to 2 delta.
inline TheoremReport admissible_p(Theorem th, const ModelParams& p, const NormSetup& ns,
                                  const std::optional<Rational>& s_in = std::nullopt) {
    const Rational n(p.n()), m = ns.m(), q = ns.q(), d = p.delta_q(), sg = p.sigma_q();
    const Rational two(2), one(1);
    TheoremReport rep;
    rep.theorem = th;

    Rational s = two * d;
    if (th != Theorem::T2_1) {
        detail::require_gate(s_in.has_value(), "s-range", "theorem requires a regularity s");
        s = *s_in;
    }
    const Rational s_hi = two * d + n / q;
    switch (th) {
    case Theorem::T2_1: break;
    case Theorem::T2_2:
        detail::require_gate(s.sign() > 0 && s < two * d, "s-range", "requires 0 < s < 2 delta");
        break;
    case Theorem::T2_3:
        detail::require_gate(s > two * d && s <= s_hi, "s-range", "requires 2 delta < s <= 2 delta + n/q");
        break;
    case Theorem::T2_4:
    case Theorem::T2_5:
        detail::require_gate(s > s_hi, "s-range", "requires s > 2 delta + n/q");
        break;
    }

    const Rational k1 = kappa1(p, ns), k2 = kappa2(p, ns);
    const RationalInterval base = RationalInterval::closed_from(q / m);

    switch (th) {
    case Theorem::T2_1:
        detail::exponent_condition(rep, p, ns, k1, two * m * d, "kappa1", "2 m delta");
        break;
    case Theorem::T2_2:
    case Theorem::T2_3:
    case Theorem::T2_4:
        detail::exponent_condition(rep, p, ns, k1, m * s, "kappa1", "m s");
        break;
    case Theorem::T2_5:
        detail::exponent_condition(rep, p, ns, k2, m * (s - sg), "kappa2", "m (s - sigma)");
        break;
    }

    if (th == Theorem::T2_3) {
        const Rational c = Rational(1) + Rational(std::max<std::int64_t>((s - two * d).ceil(), 0));
        detail::push_interval(rep, "chain-rule", "p > 1 + ceil(s - 2 delta)", RationalInterval::open_from(c));
    }
    if (th == Theorem::T2_4 || th == Theorem::T2_5) {
        detail::push_interval(rep, "fractional-power", "p > 1 + s - 2 delta",
                              RationalInterval::open_from(one + s - two * d));
    }

    // Gagliardo-Nirenberg side conditions
    // p_cap is only evaluated when n > lo_n
    auto gn_range = [&](const Rational& lo_n, const Rational& hi_n, auto p_cap, const std::string& formula) {
        if (n <= lo_n) {
            detail::push_interval(rep, "gagliardo-nirenberg", formula, base);
        } else if (n <= hi_n) {
            detail::push_interval(rep, "gagliardo-nirenberg", formula,
                                  base.intersect(RationalInterval::closed(q / m, p_cap())));
        } else {
            rep.conditions.push_back({"gagliardo-nirenberg", formula, RationalInterval::empty(), false});
            rep.notes.push_back("dimension n = " + n.str() + " exceeds the admissible range bound " + hi_n.str());
        }
    };
    switch (th) {
    case Theorem::T2_1:
        gn_range(two * q * d, two * q * q * d / (q - m), [&] { return n / (n - two * q * d); },
                 "p in [q/m, inf) if n <= 2 q delta; p in [q/m, n/(n - 2 q delta)] if n in (2 q delta, 2 q^2 delta/(q - m)]");
        break;
    case Theorem::T2_2:
        gn_range(q * s, q * q * s / (q - m), [&] { return n / (n - q * s); },
                 "p in [q/m, inf) if n <= q s; p in [q/m, n/(n - q s)] if n in (q s, q^2 s/(q - m)]");
        break;
    case Theorem::T2_3:
        gn_range(q * s, q * s + two * m * q * d / (q - m), [&] { return one + two * q * d / (n - q * s); },
                 "p in [q/m, inf) if n <= q s; p in [q/m, 1 + 2 q delta/(n - q s)] if n in (q s, q s + 2 m q delta/(q - m)]");
        rep.notes.push_back("side condition dimension range read as n in (q s, q s + 2 m q delta/(q - m)]");
        break;
    case Theorem::T2_4:
    case Theorem::T2_5: {
        const Rational kappa = th == Theorem::T2_4 ? k1 : k2;
        const Rational floor_n = two * m * d * kappa;
        const std::string kn = th == Theorem::T2_4 ? "kappa1" : "kappa2";
        if (n > floor_n) {
            detail::push_interval(rep, "gagliardo-nirenberg", "p in [q/m, inf) and n > 2 m delta " + kn, base);
        } else {
            rep.conditions.push_back(
                {"gagliardo-nirenberg", "p in [q/m, inf) and n > 2 m delta " + kn, RationalInterval::empty(), false});
        }
        break;
    }
    }

    RationalInterval res = RationalInterval::all();
    for (const auto& c : rep.conditions) res = res.intersect(c.interval);
    rep.result = res;
    if (res.is_empty() && rep.notes.empty()) rep.notes.push_back("conditions have empty intersection");
    return rep;
}

struct ChannelExponent {
    std::string channel;
    Rational exponent;
};

// Large-time exponents of the solution channels guaranteed by a theorem.
inline std::vector<ChannelExponent> decay_rate_bundle(Theorem th, const ModelParams& p, const NormSetup& ns,
                                                      const std::optional<Rational>& s_in = std::nullopt) {
    const TheoremReport rep = admissible_p(th, p, ns, s_in);
    if (rep.result.is_empty()) throw std::domain_error("decay bundle: no admissible exponent for this theorem");
    const auto r = exact_rates(p, ns.inv_r());
    const Rational two(2), d = p.delta_q();
    switch (th) {
    case Theorem::T2_1:
        return {{"u", r.u_from_u1(Rational(0))},
                {"D^sigma u", r.u_from_u1(p.sigma_q())},
                {"u_t", r.ut_from_u1(Rational(0))},
                {"D^(2delta) u", r.u_from_u1(two * d)}};
    case Theorem::T2_2: return {{"u", r.u_from_u1(Rational(0))}, {"D^s u", r.u_from_u1(*s_in)}};
    default:
        return {{"u", r.u_from_u1(Rational(0))},
                {"D^s u", r.u_from_u1(*s_in)},
                {"u_t", r.ut_from_u1(Rational(0))},
                {"D^(s-2delta) u_t", r.ut_from_u1(*s_in - two * d)}};
    }
}

} // namespace sevo

#include "checks.hpp"

#include "d0l/ksets.hpp"
#include "d0l/oracle.hpp"

namespace d0l::testing {

std::string limit_prefix(const D0LSystem& restricted, std::size_t length, std::string_view expansion)
{
    Word w = oracle::expand_prefix(restricted, length + 1);
    std::string out = to_string(restricted.alphabet(), w);
    if (!expansion.empty()) out.replace(0, 1, expansion);
    out.resize(length);
    return out;
}

std::optional<std::string> check_positive(const D0LSystem& restricted, const Verdict& verdict,
                                          std::string_view expansion)
{
    if (verdict.kind != VerdictKind::ultimately_periodic) return std::nullopt;
    if (!verdict.period || !verdict.minimal_period || !verdict.preperiod)
        return "periodic verdict without period data";
    if (*verdict.period % *verdict.minimal_period != 0) return "minimal period does not divide period";
    const std::size_t t = verdict.preperiod->value;
    for (std::size_t p : {*verdict.period, *verdict.minimal_period}) {
        std::string x = limit_prefix(restricted, t + 11 * p + 1, expansion);
        for (std::size_t n = t; n <= t + 10 * p; ++n)
            if (x[n] != x[n + p])
                return "x[" + std::to_string(n) + "] != x[" + std::to_string(n + p) + "]";
    }
    return std::nullopt;
}

namespace {

std::optional<std::string> recheck(const D0LSystem& s, const Verdict& v)
{
    const auto& h = s.morphism();
    const std::size_t m = h.size();
    const std::size_t cap = 5'000'000;
    auto classes = classification(h, s.axiom().front());
    if (!v.pivot) return "aperiodic verdict without pivot";
    const Letter pivot = *v.pivot;
    if (!classes.a1.contains(pivot)) return "pivot outside A1";

    if (auto* w = std::get_if<witness::UnreachablePivot>(&v.witness)) {
        if (!classes.infinite.contains(w->letter)) return "unreachable-pivot letter is finite";
        Word x{w->letter};
        for (std::size_t i = 0; i <= m; ++i) {
            if (std::find(x.begin(), x.end(), pivot) != x.end()) return "pivot occurs in an image";
            x = iterate(h, x, 1, cap);
        }
        return std::nullopt;
    }
    if (auto* w = std::get_if<witness::Pumping>(&v.witness)) {
        const auto& d = w->data;
        if (!classes.a1.contains(d.letter)) return "pumped letter outside A1";
        if (d.exponent == 0 || d.exponent > m) return "pumping exponent out of range";
        Word image = iterate(h, Word{d.letter}, d.exponent, cap);
        if (d.offset >= image.size() || image[d.offset] != d.letter) return "pumped occurrence missing";
        Word flank = d.side == Side::left
                         ? Word(image.begin(), image.begin() + static_cast<std::ptrdiff_t>(d.offset))
                         : Word(image.begin() + static_cast<std::ptrdiff_t>(d.offset) + 1, image.end());
        if (flank != d.flank || flank.empty()) return "flank does not match the image";
        for (Letter l : flank)
            if (!classes.finite.contains(l)) return "flank holds an infinite letter";
        if (iterate(h, flank, m, cap).empty()) return "flank dies";
        return std::nullopt;
    }
    if (auto* w = std::get_if<witness::CommutationFailure>(&v.witness)) {
        Word ij{pivot}, ji{pivot};
        ij.insert(ij.end(), w->first.begin(), w->first.end());
        ij.push_back(pivot);
        ij.insert(ij.end(), w->second.begin(), w->second.end());
        ji.insert(ji.end(), w->second.begin(), w->second.end());
        ji.push_back(pivot);
        ji.insert(ji.end(), w->first.begin(), w->first.end());
        if (lazy_equal(h, ij, ji, m)) return "gaps commute after all";
        return std::nullopt;
    }
    if (auto* w = std::get_if<witness::ZMembershipFailure>(&v.witness)) {
        Word bu{pivot};
        bu.insert(bu.end(), w->gap.begin(), w->gap.end());
        Word image = iterate(h, bu, m, cap);
        bool member = image.size() % w->z.size() == 0;
        for (std::size_t k = 0; member && k < image.size(); ++k) member = image[k] == w->z[k % w->z.size()];
        if (member) return "image lies in z* after all";
        return std::nullopt;
    }
    if (auto* w = std::get_if<witness::ZTestFailure>(&v.witness)) {
        if (w->z.empty()) return "empty z";
        if (is_ultimately_p_periodic(s, identity_coding(), w->z.size())) return "z-test passes on re-run";
        return std::nullopt;
    }
    return "aperiodic verdict without a witness";
}

}  // namespace

std::optional<std::string> recheck_witness(const D0LSystem& restricted, const Verdict& verdict)
{
    if (verdict.kind != VerdictKind::not_ultimately_periodic) return std::nullopt;
    return recheck(restricted, verdict);
}

}  // namespace d0l::testing

#include "d0l/report.hpp"

namespace d0l::report {

namespace {

std::string word(const Alphabet& alphabet, std::span<const Letter> w) { return to_string(alphabet, w); }

std::string symbol(const Alphabet& alphabet, Letter l) { return std::string(1, alphabet.symbol(l)); }

std::string braces(const Alphabet& alphabet, const LetterSet& letters)
{
    std::string out = "{";
    for (Letter l : letters) {
        if (out.size() > 1) out += ',';
        out += alphabet.symbol(l);
    }
    return out + "}";
}

std::string quoted(const std::string& w) { return "\"" + w + "\""; }

json optional_number(const std::optional<std::size_t>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

json letters_json(const Alphabet& alphabet, const LetterSet& letters)
{
    json out = json::array();
    for (Letter l : letters) out.push_back(symbol(alphabet, l));
    return out;
}

json classification_json(const Alphabet& alphabet, const LetterClassification& classes)
{
    return {
        {"mortal", letters_json(alphabet, classes.mortal)},
        {"finite", letters_json(alphabet, classes.finite)},
        {"infinite", letters_json(alphabet, classes.infinite)},
        {"recurrent", letters_json(alphabet, classes.recurrent)},
        {"a1", letters_json(alphabet, classes.a1)},
        {"occurring", letters_json(alphabet, classes.occurring)},
    };
}

void classification_text(std::ostream& out, const Alphabet& alphabet,
                         const LetterClassification& classes)
{
    out << "mortal:    " << braces(alphabet, classes.mortal) << '\n'
        << "finite:    " << braces(alphabet, classes.finite) << '\n'
        << "infinite:  " << braces(alphabet, classes.infinite) << '\n'
        << "recurrent: " << braces(alphabet, classes.recurrent) << '\n'
        << "a1:        " << braces(alphabet, classes.a1) << '\n'
        << "occurring: " << braces(alphabet, classes.occurring) << '\n';
}

json ksets_json(const Alphabet& alphabet, const KSetReport& report, bool periodic)
{
    json sets = json::array();
    for (const auto& s : report.sets) sets.push_back(letters_json(alphabet, s));
    return {{"p", report.p}, {"r", report.r}, {"q", report.q}, {"ksets", sets}, {"periodic", periodic}};
}

void ksets_text(std::ostream& out, const Alphabet& alphabet, const KSetReport& report,
                bool periodic)
{
    out << "p = " << report.p << ", r = " << report.r << ", q = " << report.q << '\n';
    for (std::size_t k = 0; k < report.sets.size(); ++k)
        out << "k = " << k << ": " << braces(alphabet, report.sets[k]) << '\n';
    out << (periodic ? "ultimately " + std::to_string(report.p) + "-periodic"
                     : "not ultimately " + std::to_string(report.p) + "-periodic")
        << '\n';
}

json system_json(const D0LSystem& system)
{
    const auto& h = system.morphism();
    json rules = json::object();
    for (Letter b = 0; b < h.size(); ++b) rules[symbol(h.alphabet(), b)] = word(h.alphabet(), h.image(b));
    return {{"axiom", word(h.alphabet(), system.axiom())}, {"rules", rules}};
}

json family_json(const NormalizedFamily& family)
{
    json members = json::array();
    for (const auto& m : family.members) {
        json j = system_json(m.system);
        j["index"] = m.index;
        j["source"] = m.source;
        j["fresh"] = m.fresh;
        members.push_back(std::move(j));
    }
    json pair = family.pair ? json{{"p", family.pair->p}, {"q", family.pair->q}} : json(nullptr);
    return {{"status", to_string(family.status)}, {"pair", pair}, {"members", members}};
}

void family_text(std::ostream& out, const NormalizedFamily& family)
{
    out << "status: " << to_string(family.status) << '\n';
    if (family.pair) out << "pair: p = " << family.pair->p << ", q = " << family.pair->q << '\n';
    for (const auto& m : family.members) {
        out << "\nmember " << m.index << " (from " << quoted(m.source)
            << (m.fresh ? ", fresh axiom letter" : "") << ")\n";
        out << format_system(m.system);
    }
}

json witness_json(const Alphabet& alphabet, const Witness& witness)
{
    json out{{"kind", witness_kind(witness)}};
    std::visit(
        [&](const auto& w) {
            using W = std::decay_t<decltype(w)>;
            if constexpr (std::is_same_v<W, witness::Period>) {
                out["z"] = word(alphabet, w.z);
            } else if constexpr (std::is_same_v<W, witness::UnreachablePivot>) {
                out["letter"] = symbol(alphabet, w.letter);
            } else if constexpr (std::is_same_v<W, witness::Pumping>) {
                out["letter"] = symbol(alphabet, w.data.letter);
                out["exponent"] = w.data.exponent;
                out["side"] = to_string(w.data.side);
                out["flank"] = word(alphabet, w.data.flank);
                out["offset"] = w.data.offset;
            } else if constexpr (std::is_same_v<W, witness::CommutationFailure>) {
                out["first"] = word(alphabet, w.first);
                out["second"] = word(alphabet, w.second);
            } else if constexpr (std::is_same_v<W, witness::ZMembershipFailure>) {
                out["z"] = word(alphabet, w.z);
                out["gap"] = word(alphabet, w.gap);
            } else if constexpr (std::is_same_v<W, witness::ZTestFailure>) {
                out["z"] = word(alphabet, w.z);
            }
        },
        witness);
    return out;
}

json verdict_json(const Alphabet& alphabet, const Verdict& verdict)
{
    json out{
        {"verdict", to_string(verdict.kind)},
        {"period", optional_number(verdict.period)},
        {"minimal_period", optional_number(verdict.minimal_period)},
        {"preperiod", verdict.preperiod ? json(verdict.preperiod->value) : json(nullptr)},
        {"preperiod_exact", verdict.preperiod ? json(verdict.preperiod->exact) : json(nullptr)},
        {"pivot", verdict.pivot ? json(symbol(alphabet, *verdict.pivot)) : json(nullptr)},
        {"witness", witness_json(alphabet, verdict.witness)},
    };
    if (!verdict.message.empty()) out["message"] = verdict.message;
    return out;
}

json member_json(const MemberDecision& member)
{
    const Alphabet empty;
    const Alphabet& alphabet = member.restricted ? member.restricted->alphabet() : empty;
    json out = verdict_json(alphabet, member.verdict);
    if (member.member) {
        out["index"] = member.member->index;
        out["source"] = member.member->source;
    } else {
        out["index"] = nullptr;
        out["source"] = nullptr;
    }
    return out;
}

json decision_json(const Decision& decision)
{
    json members = json::array();
    for (const auto& m : decision.members) members.push_back(member_json(m));
    return {{"status", to_string(decision.status)}, {"members", members}};
}

namespace {

std::string witness_text(const Alphabet& alphabet, const Witness& witness)
{
    struct Text {
        const Alphabet& a;
        std::string operator()(std::monostate) const { return "none"; }
        std::string operator()(const witness::Period& w) const
        {
            return "period word z = " + quoted(word(a, w.z));
        }
        std::string operator()(const witness::UnreachablePivot& w) const
        {
            return "infinite letter " + symbol(a, w.letter) + " never produces the pivot";
        }
        std::string operator()(const witness::Pumping& w) const
        {
            return "pumping: h^" + std::to_string(w.data.exponent) + "(" + symbol(a, w.data.letter) +
                   ") has the surviving finite " + to_string(w.data.side) + " flank " +
                   quoted(word(a, w.data.flank));
        }
        std::string operator()(const witness::CommutationFailure& w) const
        {
            return "gaps " + quoted(word(a, w.first)) + " and " + quoted(word(a, w.second)) +
                   " do not commute";
        }
        std::string operator()(const witness::ZMembershipFailure& w) const
        {
            return "gap " + quoted(word(a, w.gap)) + " leaves " + quoted(word(a, w.z)) + "*";
        }
        std::string operator()(const witness::ZTestFailure& w) const
        {
            return "not ultimately " + std::to_string(w.z.size()) + "-periodic, z = " +
                   quoted(word(a, w.z));
        }
    };
    return std::visit(Text{alphabet}, witness);
}

std::string verdict_phrase(VerdictKind kind)
{
    switch (kind) {
    case VerdictKind::ultimately_periodic: return "ultimately periodic";
    case VerdictKind::not_ultimately_periodic: return "not ultimately periodic";
    case VerdictKind::no_infinite_word: return "no infinite word";
    case VerdictKind::unknown_limit: return "limit unknown within the search bound";
    case VerdictKind::resource_limit: return "resource limit reached";
    }
    return "unknown";
}

}  // namespace

void decision_text(std::ostream& out, const Decision& decision)
{
    out << "status: " << to_string(decision.status) << '\n';
    for (const auto& m : decision.members) {
        const Alphabet empty;
        const Alphabet& alphabet = m.restricted ? m.restricted->alphabet() : empty;
        const Verdict& v = m.verdict;
        if (m.member)
            out << "member " << m.member->index << " (from " << quoted(m.member->source) << "): ";
        out << verdict_phrase(v.kind) << '\n';
        if (v.period) out << "  period: " << *v.period << '\n';
        if (v.minimal_period) out << "  minimal period: " << *v.minimal_period << '\n';
        if (v.preperiod)
            out << "  preperiod: " << v.preperiod->value
                << (v.preperiod->exact ? " (exact)" : " (lower bound)") << '\n';
        if (v.pivot) out << "  pivot: " << alphabet.symbol(*v.pivot) << '\n';
        if (!std::holds_alternative<std::monostate>(v.witness))
            out << "  witness: " << witness_text(alphabet, v.witness) << '\n';
        if (!v.message.empty()) out << "  note: " << v.message << '\n';
    }
}

std::string summary(const Decision& decision)
{
    bool all_periodic = true;
    for (const auto& m : decision.members) {
        if (m.verdict.kind == VerdictKind::not_ultimately_periodic) return "some-aperiodic";
        if (m.verdict.kind != VerdictKind::ultimately_periodic) all_periodic = false;
    }
    return all_periodic && !decision.members.empty() ? "all-periodic" : "unknown";
}

}  // namespace d0l::report

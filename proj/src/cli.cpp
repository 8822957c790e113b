#include "d0l/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <functional>
#include <sstream>

#include "d0l/oracle.hpp"
#include "d0l/report.hpp"

namespace d0l::cli {

namespace {

using report::json;

struct Common {
    std::string file;
    bool json = false;
    Limits limits;
};

void add_common(CLI::App& sub, Common& common)
{
    sub.add_option("file", common.file, "system file")->required();
    sub.add_flag("--json", common.json, "print JSON instead of text");
    sub.add_option("--max-len", common.limits.max_len, "largest word materialized")
        ->check(CLI::PositiveNumber);
    sub.add_option("--max-steps", common.limits.max_steps, "bound on the normalization search")
        ->check(CLI::PositiveNumber);
    sub.add_option("--step-budget", common.limits.step_budget, "streaming step budget")
        ->check(CLI::PositiveNumber);
    sub.add_option("--max-states", common.limits.max_states, "state budget for finite searches")
        ->check(CLI::PositiveNumber);
}

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

D0LSystem load(const std::string& path)
{
    std::string text = read_file(path);
    try {
        return parse_system(text);
    } catch (const ParseError& e) {
        throw UsageError(path + ":" + e.what());
    }
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

// The systems a per-fixed-point command works on: the system itself when its
// axiom is a prolongable letter, otherwise the members of its normalized family.
struct Target {
    std::optional<FamilyMember> member;
    D0LSystem system;
};

std::vector<Target> targets(const D0LSystem& system, const Limits& limits, LimitStatus& status)
{
    std::vector<Target> out;
    if (is_letter_prolongable(system)) {
        status = LimitStatus::nonempty_limit;
        out.push_back({std::nullopt, system});
        return out;
    }
    auto family = decompose(system, limits);
    status = family.status;
    for (auto& m : family.members) {
        D0LSystem s = m.system;
        out.push_back({std::move(m), std::move(s)});
    }
    return out;
}

void tag(json& j, const Target& t)
{
    if (!t.member) return;
    j["index"] = t.member->index;
    j["source"] = t.member->source;
}

void text_header(std::ostream& out, const Target& t, std::size_t count)
{
    if (!t.member || count < 2) return;
    out << "member " << t.member->index << " (from \"" << t.member->source << "\")\n";
}

json wrap(std::vector<json> items, LimitStatus status)
{
    if (items.size() == 1) return std::move(items.front());
    json members = json::array();
    for (auto& j : items) members.push_back(std::move(j));
    return {{"status", to_string(status)}, {"members", members}};
}

int cmd_classify(const Common& c, std::ostream& out)
{
    LimitStatus status{};
    auto ts = targets(load(c.file), c.limits, status);
    std::vector<json> items;
    for (const auto& t : ts) {
        const auto& h = t.system.morphism();
        auto classes = classification(h, t.system.axiom().front());
        if (c.json) {
            json j = report::classification_json(h.alphabet(), classes);
            if (ts.size() > 1) tag(j, t);
            items.push_back(std::move(j));
        } else {
            text_header(out, t, ts.size());
            report::classification_text(out, h.alphabet(), classes);
        }
    }
    if (c.json) emit(out, wrap(std::move(items), status));
    else if (ts.empty()) out << "status: " << to_string(status) << '\n';
    return ok;
}

int cmd_ksets(const Common& c, std::uint64_t p, const std::string& coding_file, std::ostream& out)
{
    D0LSystem system = load(c.file);
    Coding coding = identity_coding();
    if (!coding_file.empty()) {
        try {
            coding = parse_coding(read_file(coding_file), system.alphabet());
        } catch (const ParseError& e) {
            throw UsageError(coding_file + ":" + e.what());
        }
    }
    LimitStatus status{};
    auto ts = targets(system, c.limits, status);
    std::vector<json> items;
    for (const auto& t : ts) {
        auto rep = k_sets(t.system, p, c.limits);
        bool periodic = is_ultimately_p_periodic(rep, t.system.alphabet(), coding);
        if (c.json) {
            json j = report::ksets_json(t.system.alphabet(), rep, periodic);
            if (ts.size() > 1) tag(j, t);
            items.push_back(std::move(j));
        } else {
            text_header(out, t, ts.size());
            report::ksets_text(out, t.system.alphabet(), rep, periodic);
        }
    }
    if (c.json) emit(out, wrap(std::move(items), status));
    else if (ts.empty()) out << "status: " << to_string(status) << '\n';
    return ok;
}

int cmd_normalize(const Common& c, std::ostream& out)
{
    auto family = decompose(load(c.file), c.limits);
    if (c.json) emit(out, report::family_json(family));
    else report::family_text(out, family);
    return ok;
}

int cmd_expand(const Common& c, std::size_t length, const std::string& pivot_symbol,
               std::size_t p, std::ostream& out)
{
    D0LSystem system = load(c.file);
    const auto& alphabet = system.alphabet();
    std::optional<Letter> pivot;
    if (!pivot_symbol.empty()) {
        if (pivot_symbol.size() != 1 || !alphabet.find(pivot_symbol[0]))
            throw UsageError("--pivot must name a letter of the system");
        pivot = alphabet.find(pivot_symbol[0]);
    }
    if (length > c.limits.max_len) throw ResourceLimit("requested prefix exceeds --max-len");
    auto rep = oracle::prefix_report(system, length, p, pivot);
    if (pivot && !rep.gaps && length > 0)
        throw UsageError("the pivot occurs fewer than two times in the prefix");

    std::vector<Word> distinct;
    std::vector<std::size_t> seen;
    if (rep.gaps)
        for (const auto& g : rep.gaps->interior) {
            auto it = std::find(distinct.begin(), distinct.end(), g);
            if (it == distinct.end()) {
                distinct.push_back(g);
                seen.push_back(1);
            } else {
                ++seen[static_cast<std::size_t>(it - distinct.begin())];
            }
        }

    if (c.json) {
        json j{{"prefix", to_string(alphabet, rep.prefix)}, {"length", rep.prefix.size()}};
        json counts = json::object();
        for (Letter b = 0; b < alphabet.size(); ++b)
            counts[std::string(1, alphabet.symbol(b))] = rep.letter_counts[b];
        j["counts"] = counts;
        if (p > 0) {
            json residues = json::object();
            for (Letter b = 0; b < alphabet.size(); ++b)
                residues[std::string(1, alphabet.symbol(b))] = rep.residue_counts[b];
            j["p"] = p;
            j["residues"] = residues;
        }
        if (rep.gaps) {
            json gaps = json::array();
            for (std::size_t i = 0; i < distinct.size(); ++i)
                gaps.push_back({{"gap", to_string(alphabet, distinct[i])}, {"count", seen[i]}});
            j["gaps"] = {{"prefix", to_string(alphabet, rep.gaps->prefix)}, {"interior", gaps}};
        }
        emit(out, j);
        return ok;
    }
    out << to_string(alphabet, rep.prefix) << '\n';
    if (p > 0) {
        out << "residue counts mod " << p << ":\n";
        for (Letter b = 0; b < alphabet.size(); ++b) {
            out << "  " << alphabet.symbol(b) << ':';
            for (auto n : rep.residue_counts[b]) out << ' ' << n;
            out << '\n';
        }
    }
    if (rep.gaps) {
        out << "u0 = \"" << to_string(alphabet, rep.gaps->prefix) << "\"\n"
            << "interior gaps (distinct, first-seen order):\n";
        for (std::size_t i = 0; i < distinct.size(); ++i)
            out << "  \"" << to_string(alphabet, distinct[i]) << "\" x" << seen[i] << '\n';
    }
    return ok;
}

struct DecideFlags {
    bool all_pivots = false;
    bool summary = false;
    bool periods_only = false;
};

int cmd_decide(const Common& c, const DecideFlags& flags, std::ostream& out)
{
    auto decision = decide_ultimate_periodicity(load(c.file), {}, c.limits);
    bool capped = false;
    for (const auto& m : decision.members)
        capped = capped || m.verdict.kind == VerdictKind::resource_limit;

    // Every other pivot of A1, decided independently.
    std::vector<std::vector<std::pair<Letter, Verdict>>> by_pivot(decision.members.size());
    if (flags.all_pivots) {
        for (std::size_t i = 0; i < decision.members.size(); ++i) {
            const auto& m = decision.members[i];
            if (!m.restricted) continue;
            const auto& rs = *m.restricted;
            auto classes = classification(rs.morphism(), rs.axiom().front());
            std::string_view expansion =
                m.member && m.member->fresh ? std::string_view(m.member->source) : std::string_view{};
            for (Letter b : classes.a1) {
                DecideOptions options{rs.alphabet().symbol(b)};
                Verdict v = decide_member(rs, options, c.limits, expansion);
                capped = capped || v.kind == VerdictKind::resource_limit;
                by_pivot[i].emplace_back(b, std::move(v));
            }
        }
    }

    if (flags.summary) {
        if (c.json) emit(out, json{{"summary", report::summary(decision)}});
        else out << report::summary(decision) << '\n';
        return capped ? resource_exceeded : ok;
    }

    if (flags.periods_only) {
        if (c.json) {
            json members = json::array();
            for (const auto& m : decision.members) {
                const auto& v = m.verdict;
                members.push_back({{"verdict", to_string(v.kind)},
                                   {"period", v.period ? json(*v.period) : json(nullptr)},
                                   {"minimal_period",
                                    v.minimal_period ? json(*v.minimal_period) : json(nullptr)}});
            }
            emit(out, json{{"members", members}});
        } else {
            for (const auto& m : decision.members) {
                const auto& v = m.verdict;
                if (v.period)
                    out << "period " << *v.period << ", minimal period " << *v.minimal_period << '\n';
                else
                    out << "no period (" << to_string(v.kind) << ")\n";
            }
        }
        return capped ? resource_exceeded : ok;
    }

    if (c.json) {
        json j = report::decision_json(decision);
        if (flags.all_pivots)
            for (std::size_t i = 0; i < decision.members.size(); ++i) {
                json pivots = json::array();
                for (const auto& [b, v] : by_pivot[i])
                    pivots.push_back(report::verdict_json(decision.members[i].restricted->alphabet(), v));
                j["members"][i]["pivots"] = pivots;
            }
        emit(out, j);
    } else {
        report::decision_text(out, decision);
        if (flags.all_pivots)
            for (std::size_t i = 0; i < decision.members.size(); ++i) {
                if (by_pivot[i].empty()) continue;
                const auto& alphabet = decision.members[i].restricted->alphabet();
                out << "pivots:\n";
                for (const auto& [b, v] : by_pivot[i])
                    out << "  " << alphabet.symbol(b) << ": " << to_string(v.kind) << " ("
                        << witness_kind(v.witness) << ")\n";
            }
    }
    return capped ? resource_exceeded : ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Ultimate periodicity of D0L fixed points", "d0l"};
    app.require_subcommand(1);

    Common common;
    DecideFlags decide_flags;
    std::uint64_t modulus = 0;
    std::string coding_file;
    std::size_t length = 0;
    std::string pivot_symbol;
    std::size_t expand_p = 0;

    auto* decide = app.add_subcommand("decide", "decide ultimate periodicity of the fixed point(s)");
    add_common(*decide, common);
    decide->add_flag("--all-pivots", decide_flags.all_pivots, "also decide with every pivot letter");
    decide->add_flag("--summary", decide_flags.summary,
                     "print only all-periodic, some-aperiodic or unknown");

    auto* period = app.add_subcommand("period", "like decide, printing only the periods");
    add_common(*period, common);
    period->add_flag("--summary", decide_flags.summary, "print only the family summary");

    auto* classify = app.add_subcommand("classify", "mortal, finite, infinite and recurrent letters");
    add_common(*classify, common);

    auto* ksets = app.add_subcommand("ksets", "letters recurring at each residue mod p");
    add_common(*ksets, common);
    ksets->add_option("-p", modulus, "modulus")->required()->check(CLI::PositiveNumber);
    ksets->add_option("--coding", coding_file, "letter-to-letter coding file")
        ->check(CLI::ExistingFile);

    auto* expand = app.add_subcommand("expand", "prefix of the fixed point with optional reports");
    add_common(*expand, common);
    expand->add_option("-l", length, "prefix length")->required();
    expand->add_option("--pivot", pivot_symbol, "report gaps between occurrences of this letter");
    expand->add_option("-p", expand_p, "report letter counts per residue mod p")
        ->check(CLI::PositiveNumber);

    auto* normalize = app.add_subcommand("normalize", "decompose into single-letter systems");
    add_common(*normalize, common);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        out << sub->help();
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    }

    try {
        auto* chosen = app.get_subcommands().front();
        if (chosen == decide) return cmd_decide(common, decide_flags, out);
        if (chosen == period) {
            decide_flags.periods_only = true;
            return cmd_decide(common, decide_flags, out);
        }
        if (chosen == classify) return cmd_classify(common, out);
        if (chosen == ksets) return cmd_ksets(common, modulus, coding_file, out);
        if (chosen == expand) return cmd_expand(common, length, pivot_symbol, expand_p, out);
        return cmd_normalize(common, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    } catch (const ResourceLimit& e) {
        err << "resource limit: " << e.what() << '\n';
        return resource_exceeded;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return internal_failure;
    }
}

}  // namespace d0l::cli

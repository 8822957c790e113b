#pragma once

// JSON and text renderings shared by the command-line tool and the Python module.

#include <json.hpp>
#include <ostream>

#include "d0l/classify.hpp"
#include "d0l/decide.hpp"
#include "d0l/ksets.hpp"
#include "d0l/normalize.hpp"

namespace d0l::report {

using nlohmann::json;

json letters_json(const Alphabet& alphabet, const LetterSet& letters);

json classification_json(const Alphabet& alphabet, const LetterClassification& classes);
void classification_text(std::ostream& out, const Alphabet& alphabet,
                         const LetterClassification& classes);

json ksets_json(const Alphabet& alphabet, const KSetReport& report, bool periodic);
void ksets_text(std::ostream& out, const Alphabet& alphabet, const KSetReport& report,
                bool periodic);

json system_json(const D0LSystem& system);
json family_json(const NormalizedFamily& family);
void family_text(std::ostream& out, const NormalizedFamily& family);

json witness_json(const Alphabet& alphabet, const Witness& witness);
/// Flat verdict object; `alphabet` is the one the witness and pivot refer to.
json verdict_json(const Alphabet& alphabet, const Verdict& verdict);
json member_json(const MemberDecision& member);
json decision_json(const Decision& decision);
void decision_text(std::ostream& out, const Decision& decision);

/// "all-periodic", "some-aperiodic" or "unknown".
std::string summary(const Decision& decision);

}  // namespace d0l::report

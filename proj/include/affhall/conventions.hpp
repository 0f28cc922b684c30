#pragma once

#include <optional>
#include <string>
#include <vector>

#include "affhall/eisenstein.hpp"
#include "affhall/rank2.hpp"

namespace ah {

struct WkCombo {
    Rendering rendering = Rendering::Inverse;
    bool imaginary = true;
    friend bool operator==(const WkCombo& a, const WkCombo& b) { return a.rendering == b.rendering && a.imaginary == b.imaginary; }
};
std::vector<WkCombo> wk_combos();
std::string wk_combo_str(const WkCombo& c);

// Every convention choice the code knows about, one per line; its hash goes into the record.
std::string convention_table();
std::string convention_table_hash();  // FNV-1a 64, hex

struct FunceqEvidence {
    std::string name;
    std::vector<std::pair<std::string, std::vector<int>>> per_element;  // element -> vanishing variants
};

struct ConventionRecord {
    std::string table_hash;
    std::vector<FunceqEvidence> funceq_evidence;
    std::vector<int> funceq_candidates;   // intersection over the evidence
    std::optional<int> funceq_variant;    // smallest candidate
    std::vector<Rank2Sign> rank2_candidates;
    std::optional<Rank2Sign> rank2_sign;
    std::vector<TwistRule> hall_candidates;
    std::optional<TwistRule> hall_rule;
    std::vector<WkCombo> wk_candidates;
    std::optional<WkCombo> wk_combo;
    bool flag_oracle_agrees = false;  // A2 height-shifted q^0 layer vs flag counts over F_2
};

ConventionRecord resolve_conventions();
std::string record_to_json(const ConventionRecord& r);
ConventionRecord record_from_json(const std::string& js);
// throws when the record was written against a different convention table
void require_fresh(const ConventionRecord& r);

// shared by the resolver and the acceptance checks
std::vector<int> funceq_vanishing(const LatticeSeries& N, const AffWeylElt& w, int genus, bool at_L1);
std::vector<WkCombo> wk_matches(RootSystemPtr rs, const TorsorLabel& b, long H);

}  // namespace ah

#include "trinom/records.hpp"

#include <nlohmann/json.hpp>

namespace trinom {

std::string record_to_json(const SearchRecord& rec) {
    nlohmann::ordered_json j;
    j["r"] = rec.r;
    j["delta"] = rec.delta;
    j["s"] = rec.s;
    j["accepted"] = rec.accepted;
    j["small_factors"] = rec.small_factors;
    if (rec.f)
        j["f"] = rec.f->get_str();
    else
        j["f"] = nullptr;
    j["rho_bits"] = rec.rho_bits;
    return j.dump();
}

SearchRecord record_from_json(const std::string& line) {
    nlohmann::json j = nlohmann::json::parse(line);
    SearchRecord rec;
    rec.r = j.at("r").get<std::int64_t>();
    rec.delta = j.at("delta").get<std::int64_t>();
    rec.s = j.at("s").get<std::int64_t>();
    rec.accepted = j.at("accepted").get<bool>();
    if (j.contains("small_factors"))
        rec.small_factors = j["small_factors"].get<std::vector<std::string>>();
    if (j.contains("f") && !j["f"].is_null())
        rec.f = mpz_class(j["f"].get<std::string>());
    if (j.contains("rho_bits")) rec.rho_bits = j["rho_bits"].get<std::int64_t>();
    return rec;
}

}  // namespace trinom

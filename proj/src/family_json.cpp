#include "fa/family_json.hpp"

#include "fa/parse.hpp"

namespace fa {

nlohmann::json family_to_json(const SolutionFamily &fam)
{
    nlohmann::json j;
    if (const auto *cf = std::get_if<ConjugationFamily>(&fam.value)) {
        j["kind"] = "conjugation";
        j["generators"] = nlohmann::json::array();
        for (const Element &w : cf->generators)
            j["generators"].push_back(to_string(w));
        j["modulus"] = to_string(cf->modulus);
    } else {
        const auto &rp = std::get<ReductionPair>(fam.value);
        j["kind"] = "reduction";
        j["s"] = to_string(rp.s);
        j["t"] = to_string(rp.t);
        j["threshold"] = rp.threshold;
        j["short_solutions"] = nlohmann::json::array();
        for (const Element &x : rp.short_solutions)
            j["short_solutions"].push_back(to_string(x));
    }
    return j;
}

SolutionFamily family_from_json(const nlohmann::json &j, int alphabet)
{
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "conjugation") {
        // fix one alphabet across all members
        int k = alphabet;
        if (k <= 0) {
            k = 1;
            auto widen = [&](const std::string &s) {
                Element e = parse_element(s);
                k = std::max(k, e.alphabet());
            };
            for (const auto &g : j.at("generators"))
                widen(g.get<std::string>());
            widen(j.at("modulus").get<std::string>());
        }
        ConjugationFamily cf{{}, parse_element(j.at("modulus").get<std::string>(), k)};
        for (const auto &g : j.at("generators"))
            cf.generators.push_back(parse_element(g.get<std::string>(), k));
        return SolutionFamily{std::move(cf)};
    }
    if (kind == "reduction") {
        int k = alphabet;
        if (k <= 0) {
            k = std::max(parse_element(j.at("s").get<std::string>()).alphabet(),
                         parse_element(j.at("t").get<std::string>()).alphabet());
            for (const auto &x : j.value("short_solutions", nlohmann::json::array()))
                k = std::max(k, parse_element(x.get<std::string>()).alphabet());
        }
        ReductionPair rp{parse_element(j.at("s").get<std::string>(), k),
                         parse_element(j.at("t").get<std::string>(), k),
                         j.at("threshold").get<long long>(),
                         {}};
        for (const auto &x : j.value("short_solutions", nlohmann::json::array()))
            rp.short_solutions.push_back(parse_element(x.get<std::string>(), k));
        return SolutionFamily{std::move(rp)};
    }
    throw std::invalid_argument("unknown family kind: " + kind);
}

nlohmann::json report_to_json(const VerifyReport &rep)
{
    nlohmann::json j;
    j["seed"] = rep.seed;
    j["oracle_degree"] = rep.oracle_degree;
    j["passed"] = rep.passed();
    j["checks"] = nlohmann::json::array();
    for (const CheckResult &c : rep.checks) {
        nlohmann::json cj;
        cj["name"] = c.name;
        cj["status"] = c.status == CheckStatus::Pass   ? "pass"
                       : c.status == CheckStatus::Fail ? "fail"
                                                       : "skipped";
        cj["detail"] = c.detail;
        j["checks"].push_back(cj);
    }
    return j;
}

} // namespace fa

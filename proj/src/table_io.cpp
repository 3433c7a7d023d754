#include "lbt/table_io.hpp"

#include <map>
#include <mutex>

#include <json.hpp>

namespace lbt::profiles {

namespace {

std::mutex registry_mutex;
std::map<std::string, std::function<ProfileTriple(const std::string&)>>& registry() {
    static std::map<std::string, std::function<ProfileTriple(const std::string&)>> r;
    return r;
}

} // namespace

void register_family(const std::string& name,
                     std::function<ProfileTriple(const std::string&)> factory) {
    std::lock_guard<std::mutex> lock(registry_mutex);
    registry()[name] = std::move(factory);
}

ProfileTriple load_table_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    std::string family = j.value("family", "trig");
    if (family == "trig") {
        double nu0 = j.at("nu0").get<double>();
        double nu1 = j.at("nu1").get<double>();
        double nu3 = j.at("nu3").get<double>();
        double om1 = j.at("omega1").get<double>();
        double om2 = j.at("omega2").get<double>();
        double N = j.at("N").get<double>();
        return make_trig_family(nu0, nu1, nu3, om1, om2, N);
    }
    std::lock_guard<std::mutex> lock(registry_mutex);
    auto it = registry().find(family);
    if (it == registry().end())
        throw IncompatibleParameters("unknown table family: " + family);
    return it->second(text);
}

} // namespace lbt::profiles

#include "ecograph/error.hpp"
#include "ecograph/identity.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <stdexcept>

namespace ecograph {
namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

} // namespace

std::string_view to_string(UserCategory category) noexcept {
    switch (category) {
    case UserCategory::infrastructure_provider: return "infrastructure_provider";
    case UserCategory::platform_user: return "platform_user";
    case UserCategory::product_provider: return "product_provider";
    case UserCategory::product_supporter: return "product_supporter";
    case UserCategory::service_provider: return "service_provider";
    case UserCategory::unknown: break;
    }
    return "unknown";
}

std::optional<UserCategory> user_category_from_string(std::string_view name) noexcept {
    for (auto c : kLabeledCategories)
        if (to_string(c) == name) return c;
    if (name == "unknown") return UserCategory::unknown;
    return std::nullopt;
}

std::string normalize_stakeholder_id(std::string_view id) {
    std::string out = lower(id);
    if (out.empty()) throw ConfigError("stakeholder id must be non-empty");
    return out;
}

AffiliationMap AffiliationMap::from_json(const nlohmann::json& config) {
    if (!config.is_object()) throw ConfigError("affiliation config must be a JSON object");
    AffiliationMap map;
    auto section = [&](const char* name) -> const nlohmann::json* {
        auto it = config.find(name);
        if (it == config.end()) return nullptr;
        if (!it->is_object()) throw ConfigError(std::string("affiliation config: ") + name + " must be an object");
        return &*it;
    };
    for (const auto& item : config.items()) {
        if (item.key() != "domains" && item.key() != "overrides" && item.key() != "categories")
            throw ConfigError("affiliation config: unknown section " + item.key());
    }
    auto value_string = [](const char* sec, const auto& item) {
        if (!item.value().is_string())
            throw ConfigError(std::string("affiliation config: ") + sec + "." + item.key() + " must be a string");
        return item.value().template get<std::string>();
    };
    if (auto* domains = section("domains"))
        for (const auto& item : domains->items()) map.add_domain_rule(item.key(), value_string("domains", item));
    if (auto* overrides = section("overrides"))
        for (const auto& item : overrides->items()) map.add_override(item.key(), value_string("overrides", item));
    if (auto* categories = section("categories")) {
        for (const auto& item : categories->items()) {
            const std::string name = value_string("categories", item);
            auto cat = user_category_from_string(name);
            if (!cat) throw ConfigError("affiliation config: unknown user category '" + name + "'");
            map.set_category(item.key(), *cat);
        }
    }
    return map;
}

AffiliationMap AffiliationMap::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open affiliation map " + path.string());
    try {
        return from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

void AffiliationMap::add_domain_rule(std::string_view domain, std::string_view stakeholder) {
    if (domain.empty()) throw ConfigError("empty domain in affiliation rule");
    domains_[lower(domain)] = normalize_stakeholder_id(stakeholder);
}

void AffiliationMap::add_override(std::string_view email, std::string_view stakeholder) {
    if (std::count(email.begin(), email.end(), '@') != 1)
        throw ConfigError("override key is not an email: " + std::string(email));
    overrides_[lower(email)] = normalize_stakeholder_id(stakeholder);
}

void AffiliationMap::set_category(std::string_view stakeholder, UserCategory category) {
    categories_[normalize_stakeholder_id(stakeholder)] = category;
}

const std::string* AffiliationMap::domain_rule(std::string_view domain) const {
    auto it = domains_.find(lower(domain));
    return it == domains_.end() ? nullptr : &it->second;
}

const std::string* AffiliationMap::override_for(std::string_view email) const {
    auto it = overrides_.find(lower(email));
    return it == overrides_.end() ? nullptr : &it->second;
}

UserCategory AffiliationMap::category_of(std::string_view stakeholder) const {
    auto it = categories_.find(stakeholder);
    return it == categories_.end() ? UserCategory::unknown : it->second;
}

Stakeholder AffiliationMap::stakeholder(std::string_view id) const {
    return Stakeholder{std::string(id), std::string(id), category_of(id)};
}

std::vector<std::string> AffiliationMap::stakeholder_ids() const {
    std::set<std::string> ids;
    for (const auto& [k, v] : domains_) ids.insert(v);
    for (const auto& [k, v] : overrides_) ids.insert(v);
    for (const auto& [k, v] : categories_) ids.insert(k);
    return {ids.begin(), ids.end()};
}

Resolution resolve(std::string_view email, const AffiliationMap& map) {
    const auto at = email.find('@');
    if (at == std::string_view::npos || at == 0 || at + 1 == email.size() ||
        email.find('@', at + 1) != std::string_view::npos)
        throw std::invalid_argument("invalid email address '" + std::string(email) + "'");

    if (const std::string* id = map.override_for(email)) return map.stakeholder(*id);
    if (const std::string* id = map.domain_rule(email.substr(at + 1))) return map.stakeholder(*id);
    return Unresolved{std::string(email)};
}

std::string stakeholder_id_for(std::string_view email, const AffiliationMap& map) {
    Resolution r = resolve(email, map);
    if (auto* s = std::get_if<Stakeholder>(&r)) return std::move(s->id);
    return std::string(kUnaffiliated);
}

std::vector<UnresolvedEntry> unresolved_report(const std::vector<IssueRecord>& corpus,
                                               const AffiliationMap& map) {
    std::map<std::string, std::size_t> counts;
    auto visit = [&](const std::string& email) {
        if (std::holds_alternative<Unresolved>(resolve(email, map))) ++counts[email];
    };
    for (const auto& issue : corpus) {
        visit(issue.reporter_email);
        for (const auto& p : issue.patches) visit(p.author_email);
    }
    std::vector<UnresolvedEntry> out;
    out.reserve(counts.size());
    for (auto& [email, n] : counts) out.push_back({email, n});
    std::stable_sort(out.begin(), out.end(),
                     [](const auto& a, const auto& b) { return a.count > b.count; });
    return out;
}

} // namespace ecograph

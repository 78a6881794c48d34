#pragma once

#include "ecograph/records.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

namespace ecograph {

enum class UserCategory {
    infrastructure_provider,
    platform_user,
    product_provider,
    product_supporter,
    service_provider,
    unknown,
};

std::string_view to_string(UserCategory category) noexcept;
std::optional<UserCategory> user_category_from_string(std::string_view name) noexcept;

/// The five labeled categories, in declaration order (excludes unknown).
inline constexpr UserCategory kLabeledCategories[] = {
    UserCategory::infrastructure_provider, UserCategory::platform_user,
    UserCategory::product_provider, UserCategory::product_supporter,
    UserCategory::service_provider,
};

/// Synthetic stakeholder for contributors no rule matches.
inline constexpr std::string_view kUnaffiliated = "_unaffiliated";

struct Stakeholder {
    std::string id;
    std::string display_name;
    UserCategory user_category = UserCategory::unknown;

    friend bool operator==(const Stakeholder&, const Stakeholder&) = default;
};

struct Unresolved {
    std::string email;

    friend bool operator==(const Unresolved&, const Unresolved&) = default;
};

using Resolution = std::variant<Stakeholder, Unresolved>;

/// Email/domain -> stakeholder rules. Keys are stored lowercase; stakeholder
/// ids are lowercase slugs.
class AffiliationMap {
public:
    AffiliationMap() = default;

    static AffiliationMap from_json(const nlohmann::json& config);
    static AffiliationMap load(const std::filesystem::path& path);

    void add_domain_rule(std::string_view domain, std::string_view stakeholder);
    void add_override(std::string_view email, std::string_view stakeholder);
    void set_category(std::string_view stakeholder, UserCategory category);

    const std::string* domain_rule(std::string_view domain) const;
    const std::string* override_for(std::string_view email) const;
    UserCategory category_of(std::string_view stakeholder) const;

    /// Stakeholder for an id, with its configured category.
    Stakeholder stakeholder(std::string_view id) const;

    /// Every stakeholder id referenced by a rule, sorted.
    std::vector<std::string> stakeholder_ids() const;

private:
    std::map<std::string, std::string, std::less<>> domains_;
    std::map<std::string, std::string, std::less<>> overrides_;
    std::map<std::string, UserCategory, std::less<>> categories_;
};

/// Lowercases and validates a stakeholder slug; throws ConfigError when empty.
std::string normalize_stakeholder_id(std::string_view id);

/// Override first, then exact (case-insensitive) domain match.
/// Throws std::invalid_argument unless the email has exactly one '@'
/// with non-empty local part and domain.
Resolution resolve(std::string_view email, const AffiliationMap& map);

/// Like resolve(), mapping Unresolved to the `_unaffiliated` stakeholder.
std::string stakeholder_id_for(std::string_view email, const AffiliationMap& map);

struct UnresolvedEntry {
    std::string email;
    std::size_t count = 0;

    friend bool operator==(const UnresolvedEntry&, const UnresolvedEntry&) = default;
};

/// Reporter and patch-author emails that do not resolve, with occurrence
/// counts, sorted by count descending then email ascending.
std::vector<UnresolvedEntry> unresolved_report(const std::vector<IssueRecord>& corpus,
                                               const AffiliationMap& map);

} // namespace ecograph

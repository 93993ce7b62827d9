#include "pfk/theory.hpp"

namespace pfk {

const std::string& RewriteRule::head() const { return spine_of(lhs).head.name(); }

std::size_t RewriteRule::arity() const { return spine_of(lhs).args.size(); }

const ConstDecl* Theory::find(std::string_view name) const {
    auto it = const_index_.find(std::string(name));
    return it == const_index_.end() ? nullptr : &constants_[it->second];
}

std::vector<const RewriteRule*> Theory::rules_for(std::string_view name) const {
    std::vector<const RewriteRule*> out;
    auto it = rules_by_head_.find(std::string(name));
    if (it == rules_by_head_.end()) return out;
    out.reserve(it->second.size());
    for (std::size_t i : it->second) out.push_back(&rules_[i]);
    return out;
}

void Theory::add_constant(ConstDecl decl) {
    if (has_constant(decl.name))
        throw Error(ErrorKind::DuplicateConstant, "constant '" + decl.name + "' is already declared", decl.pos);
    const_index_.emplace(decl.name, constants_.size());
    entries_.push_back({Entry::Kind::Constant, constants_.size()});
    constants_.push_back(std::move(decl));
}

void Theory::add_rule(RewriteRule rule) {
    rules_by_head_[rule.head()].push_back(rules_.size());
    entries_.push_back({Entry::Kind::Rule, rules_.size()});
    rules_.push_back(std::move(rule));
}

}  // namespace pfk

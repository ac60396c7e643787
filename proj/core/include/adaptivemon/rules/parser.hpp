#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "adaptivemon/rules/ast.hpp"

namespace adaptivemon::rules {

/// Parses a rule document.
///
///   document  := rule* ;
///   rule      := "rule" IDENT "salience" INT "{" when then "}" ;
///   when      := "when" cond ("and" cond)* ;
///   cond      := "indicator" STRING ("not")? "in" "state" STATE
///              | "streak" "(" STRING "," STATE ")" CMP INT
///              | "param" PNAME "(" STRING ")" CMP NUM ;
///   then      := "then" act (";" act)* ;
///   act       := "change_rate" STRING ("proportional" | "to" NUM)
///              | "select_indicators" ("keep" STRING ("," STRING)*
///                                   | "drop" STRING ("," STRING)* | "all") ;
///
/// Keywords are case-sensitive; `#` starts a line comment. Throws ParseError
/// carrying the line and column of the offending token.
RuleSet parse_rules(std::string_view text);

/// Reads and parses a rule file. I/O failures raise ConfigError.
RuleSet load_rules(const std::filesystem::path& path);

/// Canonical textual form. parse_rules(print_rules(r)) == r for every valid r.
std::string print_rules(const RuleSet& rules);

}  // namespace adaptivemon::rules

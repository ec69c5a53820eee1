#ifndef PROVAUTH_PROVAUTH_HPP
#define PROVAUTH_PROVAUTH_HPP

#include "provauth/audit.hpp"
#include "provauth/config.hpp"
#include "provauth/core.hpp"
#include "provauth/diagnostics.hpp"
#include "provauth/engine.hpp"
#include "provauth/parser.hpp"
#include "provauth/pretty.hpp"
#include "provauth/proof.hpp"
#include "provauth/proof_json.hpp"
#include "provauth/query.hpp"
#include "provauth/statement.hpp"
#include "provauth/validate.hpp"

#endif // PROVAUTH_PROVAUTH_HPP

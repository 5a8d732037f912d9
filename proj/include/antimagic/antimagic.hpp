#ifndef ANTIMAGIC_ANTIMAGIC_HPP
#define ANTIMAGIC_ANTIMAGIC_HPP

#include "antimagic/construction.hpp"
#include "antimagic/errors.hpp"
#include "antimagic/generators.hpp"
#include "antimagic/graph_core.hpp"
#include "antimagic/oracle.hpp"
#include "antimagic/verification.hpp"

#endif  // ANTIMAGIC_ANTIMAGIC_HPP

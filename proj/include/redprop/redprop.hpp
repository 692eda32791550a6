#pragma once

#include "redprop/core.hpp"
#include "redprop/constraint.hpp"
#include "redprop/engine.hpp"
#include "redprop/rules.hpp"
#include "redprop/rule_extract.hpp"
#include "redprop/channels.hpp"
#include "redprop/analyzer.hpp"
#include "redprop/models.hpp"
#include "redprop/report.hpp"

#pragma once

namespace weiljets {

/// Selects the serial reference path or the OpenMP path of a kernel.
enum class Execution { serial, parallel };

}  // namespace weiljets

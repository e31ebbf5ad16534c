// Copyright 2026 The GlossGauge Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GLOSSGAUGE_GLOSSGAUGE_HPP_
#define GLOSSGAUGE_GLOSSGAUGE_HPP_

#include "glossgauge/config.hpp"
#include "glossgauge/embedding.hpp"
#include "glossgauge/error.hpp"
#include "glossgauge/generation.hpp"
#include "glossgauge/glossary.hpp"
#include "glossgauge/http.hpp"
#include "glossgauge/io.hpp"
#include "glossgauge/metrics.hpp"
#include "glossgauge/pipeline.hpp"
#include "glossgauge/prompting.hpp"
#include "glossgauge/readability.hpp"
#include "glossgauge/report.hpp"
#include "glossgauge/text.hpp"

#endif  // GLOSSGAUGE_GLOSSGAUGE_HPP_

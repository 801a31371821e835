#pragma once

#include "chaoscrypt/analysis.hpp"
#include "chaoscrypt/cipher.hpp"
#include "chaoscrypt/errors.hpp"
#include "chaoscrypt/io.hpp"
#include "chaoscrypt/key_domain.hpp"
#include "chaoscrypt/maps.hpp"
#include "chaoscrypt/parallel.hpp"
#include "chaoscrypt/report.hpp"

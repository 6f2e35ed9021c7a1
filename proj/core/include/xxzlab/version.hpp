#pragma once

#define XXZLAB_VERSION_STRING "0.1.0"

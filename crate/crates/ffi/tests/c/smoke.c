#include <stdio.h>
#include <string.h>

#include "derivid.h"

#define CHECK(cond)                                                   \
    do {                                                              \
        if (!(cond)) {                                                \
            fprintf(stderr, "failed: %s (%s)\n", #cond,               \
                    derivid_last_error());                            \
            return 1;                                                 \
        }                                                             \
    } while (0)

int main(void) {
    DerividOperation *op = NULL;
    CHECK(derivid_operation_from_catalog("novikov", &op) == DERIVID_STATUS_OK);
    CHECK(derivid_operation_arity(op) == 2);

    const char *args[] = {"x", "x^2"};
    char *value = NULL;
    CHECK(derivid_apply(op, args, 2, &value) == DERIVID_STATUS_OK);
    CHECK(strcmp(value, "2*x^2") == 0);
    derivid_string_free(value);

    char *report = NULL;
    CHECK(derivid_verify(op, DERIVID_SIDE_RIGHT, 3, DERIVID_MODE_EXHAUSTIVE,
                         NULL, NULL, &report) == DERIVID_STATUS_OK);
    CHECK(strstr(report, "\"PROVED\"") != NULL);
    derivid_string_free(report);

    DerividSampler sampler = derivid_sampler_default();
    sampler.trials = 20;
    CHECK(derivid_verify(op, DERIVID_SIDE_LEFT, 3, DERIVID_MODE_RANDOM,
                         &sampler, NULL, &report) == DERIVID_STATUS_REFUTED);
    derivid_string_free(report);

    CHECK(derivid_apply(op, args, 1, &value) == DERIVID_STATUS_ARITY_MISMATCH);
    CHECK(strlen(derivid_last_error()) > 0);
    derivid_operation_free(op);

    char *bound = NULL;
    CHECK(derivid_bound(DERIVID_THEOREM_FG, 2, 2, &bound) == DERIVID_STATUS_OK);
    CHECK(strstr(bound, "\"d\":16") != NULL);
    derivid_string_free(bound);

    printf("ok %s\n", derivid_version());
    return 0;
}

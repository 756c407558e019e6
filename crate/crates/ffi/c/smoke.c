#include <math.h>
#include <stdio.h>

#include "wree.h"

int main(void) {
    double ree = 0.0;
    if (wree_ree_closed_form(0.5, 0.25, 0.25, &ree) != WREE_STATUS_OK) {
        fprintf(stderr, "closed form: %s\n", wree_last_error());
        return 1;
    }
    printf("ree(0.5, 0.25, 0.25) = %.15f nats\n", ree);

    if (wree_ree_closed_form(0.5, 0.5, 0.5, &ree) != WREE_STATUS_INVALID_INPUT) {
        return 1;
    }
    printf("rejected: %s\n", wree_last_error());

    WreeSweep *sweep = NULL;
    if (wree_sweep_new(20, WREE_ENGINE_CLOSED_FORM, &sweep) != WREE_STATUS_OK) {
        return 1;
    }
    double min_delta = INFINITY;
    for (size_t i = 0; i < wree_sweep_len(sweep); i++) {
        WreeMonogamyRecord r;
        wree_sweep_get(sweep, i, &r);
        if (r.delta < min_delta) {
            min_delta = r.delta;
        }
    }
    printf("points = %zu, min delta = %.3e\n", wree_sweep_len(sweep), min_delta);
    wree_sweep_free(sweep);
    return min_delta < -1e-9;
}

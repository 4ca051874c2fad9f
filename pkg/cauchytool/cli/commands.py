import logging
from typing import Any, Callable, Dict, List, Optional

from cauchytool import __version__
from cauchytool.cli.config import RunConfig
from cauchytool.coarse.chain import g_function
from cauchytool.coarse.decompose import coarse_decompose
from cauchytool.coarse.measure import (
    FRACTIONAL_PROXY_LABEL, SampleSummary, change_of_measure_cost, fractional_moment, sample_x_statistic,
    w_mean_check,
)
from cauchytool.coarse.plan import CoarseGrainPlan, manual_plan, plan
from cauchytool.errors import EmptyRangeError
from cauchytool.io.cache import TableCache
from cauchytool.io.writer import ResultWriter
from cauchytool.overlap.diagnostics import recurrence_diagnostic
from cauchytool.overlap.table import OverlapTable, build_overlap, fit_log_growth
from cauchytool.parallel import ReplicaPool
from cauchytool.polymer.bounds import bound_report, n_beta_eps, window_escape_probability
from cauchytool.polymer.free_energy import LOWER_BOUND_LABEL, estimate_free_energy
from cauchytool.polymer.window import window_for
from cauchytool.walk.llt import berger_ratio, diagnostic_pmf, estimate_g0, llt_error_profile
from cauchytool.walk.scaling import scaling_constants


LOG = logging.getLogger(__name__)

# Absolute tolerance reported for exact identities
IDENTITY_TOLERANCE = 1e-10


class CommandContext:
    """
    Shared plumbing of one command run: writer, replica pool and table cache.
    """

    def __init__(self, config: RunConfig, command: str) -> None:
        """
        Initialize instance.
        """
        self.config = config
        self.command = command
        self.law = config.build_law(command)
        self.env = config.env_spec()
        self.writer = ResultWriter(config.out, config.fingerprint())
        self.pool = ReplicaPool(config.threads)
        self.cache = TableCache(config.cache) if config.cache else None

    def overlap_table(self) -> OverlapTable:
        if self.cache is not None:
            return self.cache.load(self.law, self.config.n_max, self.config.overlap_window)
        return build_overlap(self.law, self.config.n_max, self.config.overlap_window)

    def summary(self, **results: Any) -> Dict[str, Any]:
        """
        Run metadata shared by every JSON summary.
        """
        return {
            'command': self.command,
            'version': __version__,
            'law': str(self.law),
            'law_fingerprint': self.law.fingerprint(),
            'config': self.config.result_fields(),
            'seed': self.config.seed,
            'tolerance': IDENTITY_TOLERANCE,
            'results': results,
        }

    def finish(self, name: str, **results: Any) -> List[str]:
        self.writer.write_summary('{}.json'.format(name), self.summary(**results))
        return list(self.writer.written)


def cmd_llt(config: RunConfig) -> List[str]:
    """
    Scaling constants, g(0) estimates, local-limit errors and Berger ratios over the n grid.
    """
    ctx = CommandContext(config, 'llt')
    law = ctx.law
    grid = sorted(config.n_grid)
    scaling = scaling_constants(law, grid[-1])
    g0 = estimate_g0(law, grid[-1])

    rows = []
    for n in grid:
        try:
            ratio: Optional[float] = berger_ratio(law, n, config.c1)
        except EmptyRangeError:
            LOG.warning("Berger ratio range empty at n=%d", n)
            ratio = None

        rows.append({
            'n': n,
            'a_n': scaling.a_n(n),
            'phi_n': scaling.phi_n(n),
            'g0_n': estimate_g0(law, n),
            'llt_error': llt_error_profile(law, n, g0=g0, fit_n=grid[-1]),
            'berger_ratio': ratio,
        })

    ctx.writer.write_csv('llt.csv', rows)
    if config.dump_pmf:
        ctx.writer.write_pmf('pmf_n{}.txt'.format(grid[-1]), diagnostic_pmf(law, grid[-1]))

    return ctx.finish('llt', g0_fit=g0, g0_fit_n=grid[-1])


def cmd_overlap(config: RunConfig) -> List[str]:
    """
    Overlap table D(N), its log-growth fit and the recurrence diagnostic.
    """
    ctx = CommandContext(config, 'overlap')
    table = ctx.overlap_table()

    ctx.writer.write_columns('overlap.txt', table.columns(), {
        'law': table.fingerprint, 'n_max': table.n_max, 'cycle': table.cycle,
    })
    ctx.writer.write_csv('overlap.csv', [
        {'n': n, 'collision': table.collision[n], 'D': table.d[n], 'D_error': table.error[n]}
        for n in range(1, table.n_max + 1)
    ])

    results: Dict[str, Any] = {
        'D_n_max': float(table.d[table.n_max]),
        'D_error_n_max': float(table.error[table.n_max]),
        'collision_1': float(table.collision[1]),
    }
    if table.n_max >= 4:
        results['log_growth'] = fit_log_growth(table, max(1, table.n_max // 64))

    if 2 <= table.n_max < ctx.law.support_radius:
        report = recurrence_diagnostic(ctx.law, table.n_max)
        ctx.writer.write_csv('recurrence.csv', report.rows())
        results['recurrent_type'] = report.recurrent_type

    return ctx.finish('overlap', **results)


def cmd_free_energy(config: RunConfig) -> List[str]:
    """
    Replica estimates of (1/N) E log Zbar over the beta and N grids.
    """
    ctx = CommandContext(config, 'free-energy')
    rows = []
    escape = {}
    for beta in config.betas:
        for n in config.n_grid:
            window = window_for(ctx.law, config.window_r, n)
            estimate = estimate_free_energy(ctx.law, ctx.env, beta, n, config.replicas, window, ctx.pool)
            rows.append(estimate.row(config.seed))
            escape[str(n)] = window_escape_probability(ctx.law, ctx.env, n, window)

    ctx.writer.write_csv('free_energy.csv', rows)
    return ctx.finish('free_energy', label=LOWER_BOUND_LABEL, window_escape_probability=escape)


def _coarse_plan(ctx: CommandContext, beta: float) -> CoarseGrainPlan:
    config = ctx.config
    if config.manual_plan:
        return manual_plan(
            ctx.law, beta, config.plan_l, config.plan_u, config.plan_q,
            epsilon=config.epsilon, theta=config.theta, multiplier=config.window_r, k_penalty=config.k_penalty,
        )
    return plan(beta, config.epsilon, ctx.overlap_table(), config.theta, config.window_r, config.k_penalty)


def cmd_xstat(config: RunConfig) -> List[str]:
    """
    Moments of the chain statistic X, the change-of-measure cost and the W_l mean.
    """
    ctx = CommandContext(config, 'xstat')
    rows = []
    plans = []
    for beta in config.betas:
        current = _coarse_plan(ctx, beta)
        plans.append(current.to_dict())

        values = sample_x_statistic(current, ctx.env, config.replicas, ctx.pool)
        summary = SampleSummary.of(values)
        cost = change_of_measure_cost(current, values)
        w_check = w_mean_check(current, config.replicas, config.seed)

        base = {
            'epsilon': current.epsilon, 'beta': beta, 'l': current.l, 'u': current.u, 'q': current.q,
            'M': config.replicas,
        }
        rows.append(dict(base, statistic='X', mean=summary.mean, stderr=summary.mean_stderr))
        rows.append(dict(base, statistic='X^2', mean=summary.second_moment, stderr=summary.second_moment_stderr))
        rows.append(dict(base, statistic='g_cost', mean=cost.mean, stderr=cost.stderr))
        rows.append(dict(base, statistic='W', mean=w_check.mean, stderr=w_check.stderr))
        rows.append(dict(base, statistic='W_exact', mean=w_check.exact, stderr=0.0))

        LOG.info("X at beta=%g: mean %.4g, E[X^2] %.4g, g(0)=%g", beta, summary.mean, summary.second_moment,
                 g_function(current, 0.0))

    ctx.writer.write_csv('xstat.csv', rows)
    return ctx.finish('xstat', plans=plans)


def cmd_fracmoment(config: RunConfig) -> List[str]:
    """
    Fractional moments E[Zbar^theta] over the beta and N grids.
    """
    ctx = CommandContext(config, 'fracmoment')
    rows = []
    for beta in config.betas:
        for n in config.n_grid:
            window = window_for(ctx.law, config.window_r, n)
            estimate = fractional_moment(ctx.law, ctx.env, beta, config.theta, n, config.replicas, window, ctx.pool)
            rows.append({
                'beta': beta, 'theta': config.theta, 'N': n, 'M': config.replicas,
                'mean': estimate.mean, 'stderr': estimate.stderr, 'proxy': estimate.proxy,
                'window_R': config.window_r, 'seed': config.seed,
            })

    ctx.writer.write_csv('fracmoment.csv', rows)
    return ctx.finish('fracmoment', proxy_label=FRACTIONAL_PROXY_LABEL)


def cmd_bounds(config: RunConfig) -> List[str]:
    """
    Free-energy bound horizons and values from the (cached) overlap table.
    """
    ctx = CommandContext(config, 'bounds')
    table = ctx.overlap_table()

    rows = []
    for beta in config.betas:
        report = bound_report(beta, config.epsilon, table)
        row = report.to_dict()
        row['n_beta_eps'] = n_beta_eps(beta, config.epsilon, table)
        rows.append(row)

    ctx.writer.write_csv('bounds.csv', rows)
    return ctx.finish('bounds', n_max=table.n_max, placeholder_constants={'C1': 1.0, 'C2': 1.0})


def cmd_decompose(config: RunConfig) -> List[str]:
    """
    Coarse-grained decomposition of Zhat over block trajectories Y.
    """
    ctx = CommandContext(config, 'decompose')
    beta = config.betas[0]
    result = coarse_decompose(ctx.law, ctx.env, beta, config.blocks, config.block_length)

    rows = [
        {'Y': ' '.join(str(y) for y in key), 'Z_Y': value}
        for key, value in sorted(result.parts.items())
    ]
    ctx.writer.write_csv('decompose.csv', rows, columns=['Y', 'Z_Y'])
    return ctx.finish('decompose', z_hat=result.z_hat, total=result.total, residual=result.residual,
                      trajectories=len(rows), a_l=result.a_l)


COMMAND_HANDLERS: Dict[str, Callable[[RunConfig], List[str]]] = {
    'llt': cmd_llt,
    'overlap': cmd_overlap,
    'free-energy': cmd_free_energy,
    'xstat': cmd_xstat,
    'fracmoment': cmd_fracmoment,
    'bounds': cmd_bounds,
    'decompose': cmd_decompose,
}

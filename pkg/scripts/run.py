import logging
import os

import config
from cauchytool.cli.commands import cmd_bounds, cmd_free_energy, cmd_fracmoment, cmd_llt, cmd_overlap
from cauchytool.cli.config import RunConfig
from cauchytool.util import PathUtil


LOG = logging.getLogger(__name__)


class Sweep:
    """
    Runs the standard sweep of walk, overlap and polymer commands with the settings in config.py.
    """

    def __init__(self) -> None:
        """
        Initialize instance and prepare the output folder.
        """
        try:
            PathUtil.ensure_path_exists(config.OUTPUT_FOLDER)
        except OSError as e:
            raise Exception(
                "Could not create output folder {}, check your config".format(config.OUTPUT_FOLDER)
            ) from e

        self.cache = config.CACHE_PATH if config.CACHE_ENABLED else None

    def walk_config(self, name: str) -> RunConfig:
        return RunConfig(
            x_max=config.X_MAX, n_grid=list(config.N_GRID), n_max=config.N_MAX, betas=list(config.BOUND_BETAS),
            seed=config.SEED, out=os.path.join(config.OUTPUT_FOLDER, name), cache=self.cache,
        )

    def polymer_config(self, name: str) -> RunConfig:
        return RunConfig(
            x_max=config.POLYMER_X_MAX, n_grid=list(config.POLYMER_N_GRID), betas=list(config.BETAS),
            replicas=config.REPLICAS, seed=config.SEED, out=os.path.join(config.OUTPUT_FOLDER, name),
        )

    def run(self) -> None:
        LOG.info("Starting sweep into %s", config.OUTPUT_FOLDER)
        cmd_llt(self.walk_config('llt'))
        cmd_overlap(self.walk_config('overlap'))
        cmd_bounds(self.walk_config('bounds'))
        cmd_free_energy(self.polymer_config('free-energy'))
        cmd_fracmoment(self.polymer_config('fracmoment'))
        LOG.info("Sweep completed successfully")


if __name__ == "__main__":
    Sweep().run()

# This file is part of Twobox
#
# Twobox is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# Twobox is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with Twobox.  If not, see <http://www.gnu.org/licenses/>.

"""Configuration loader."""

__all__ = ['Config', 'ConfigSchema']

import copy
import logging
import os
import tomllib
from collections import UserDict
from pathlib import Path
from typing import ClassVar

import pydantic

from .abstract import EntityModel
from .exceptions import ConfigLoaderError
from .linalg import Tolerance
from .utils import dictutil


log = logging.getLogger(__name__)


class ToleranceConfigSchema(EntityModel):
    """Tolerance config schema."""

    eq_tol: float
    rank_tol: float
    roundtrip_tol: float


class SearchConfigSchema(EntityModel):
    """Search and sampling config schema."""

    max_candidates: pydantic.PositiveInt
    schur_trials: pydantic.NonNegativeInt
    seed: int


class LogConfigSchema(EntityModel):
    """Logger config schema."""

    level: str | None = None
    file: str | None = None


class ConfigSchema(EntityModel):
    """Configuration file schema."""

    tolerance: ToleranceConfigSchema
    search: SearchConfigSchema
    log: LogConfigSchema | None


class Config(UserDict):
    """
    UserDict for storing configuration.

    Environment variables prefix is ``TBX_``. Environment variables
    have higher priority then configuration file.

    Environment variables:

    * ``TBX_CONFIG`` -- path to configuration file
    * ``TBX_TOL`` -- overrides ``tolerance.eq_tol``
    * ``TBX_LOG`` -- overrides ``log.level``

    :cvar Path DEFAULT_CONFIG_FILE: :file:`/etc/twobox/twobox.toml`
    :cvar dict DEFAULT_CONFIGURATION:
    """

    DEFAULT_CONFIG_FILE = Path('/etc/twobox/twobox.toml')
    DEFAULT_CONFIGURATION: ClassVar[dict] = {
        'tolerance': {
            'eq_tol': 1e-9,
            'rank_tol': 1e-8,
            'roundtrip_tol': 1e-12,
        },
        'search': {
            'max_candidates': 1_000_000,
            'schur_trials': 200,
            'seed': 20231,
        },
        'log': {
            'level': None,
            'file': None,
        },
    }

    def __init__(self, file: Path | None = None):
        """
        Initialise Config.

        :param file: Path to configuration file. If `file` is None
            use ``TBX_CONFIG`` or :var:`Config.DEFAULT_CONFIG_FILE`.
        """
        env_file = os.getenv('TBX_CONFIG')
        self.file = Path(file or env_file or self.DEFAULT_CONFIG_FILE)
        try:
            if self.file.exists():
                with self.file.open('rb') as configfile:
                    loaded = tomllib.load(configfile)
            else:
                loaded = {}
        except tomllib.TOMLDecodeError as etoml:
            raise ConfigLoaderError(
                f'Bad TOML syntax: {self.file}: {etoml}'
            ) from etoml
        except (OSError, ValueError) as eread:
            raise ConfigLoaderError(
                f'Config read error: {self.file}: {eread}'
            ) from eread
        config = dictutil.override(
            copy.deepcopy(self.DEFAULT_CONFIGURATION), loaded
        )
        if env_tol := os.getenv('TBX_TOL'):
            try:
                config['tolerance']['eq_tol'] = float(env_tol)
            except ValueError as etol:
                raise ConfigLoaderError(
                    f'TBX_TOL is not a number: {env_tol!r}'
                ) from etol
        if env_log := os.getenv('TBX_LOG'):
            config['log']['level'] = env_log
        try:
            ConfigSchema(**config)
            Tolerance(**config['tolerance'])
        except pydantic.ValidationError as eschema:
            raise ConfigLoaderError(
                f'Invalid configuration: {self.file}: {eschema}'
            ) from eschema
        log.debug('Configuration loaded from %s: %s', self.file, config)
        super().__init__(config)

    @property
    def tolerance(self) -> Tolerance:
        """Tolerance record built from ``[tolerance]`` section."""
        return Tolerance(**self['tolerance'])

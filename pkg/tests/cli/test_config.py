import json

import pytest

from cauchytool.cli.config import DEFAULT_X_MAX, RunConfig
from cauchytool.errors import ConfigError


def test_x_max_alias():
    config = RunConfig.from_dict({'X_max': 32, 'betas': [0.5]})
    assert config.x_max == 32
    assert config.resolved_x_max('llt') == 32


def test_command_defaults():
    config = RunConfig()
    assert config.resolved_x_max('free-energy') == DEFAULT_X_MAX['free-energy'] == 64
    assert config.resolved_x_max('overlap') == 1 << 16


def test_unknown_field():
    with pytest.raises(ConfigError) as error:
        RunConfig.from_dict({'colour': 'blue'})
    assert error.value.field == 'colour'


def test_load(tmp_path):
    path = tmp_path / 'config.json'
    path.write_text(json.dumps({'X_max': 8, 'seed': 3}))
    config = RunConfig.load(str(path))
    assert (config.x_max, config.seed) == (8, 3)


@pytest.mark.parametrize('content', ['not json', '[1, 2]'])
def test_load_invalid(tmp_path, content):
    path = tmp_path / 'config.json'
    path.write_text(content)
    with pytest.raises(ConfigError) as error:
        RunConfig.load(str(path))
    assert error.value.field == 'config'


def test_load_missing(tmp_path):
    with pytest.raises(ConfigError):
        RunConfig.load(str(tmp_path / 'missing.json'))


def test_fingerprint_ignores_runtime_fields():
    first = RunConfig(out='a', threads=1, log_level='INFO')
    second = RunConfig(out='b', threads=8, cache='c', log_level='DEBUG')
    assert first.fingerprint() == second.fingerprint()
    assert first.fingerprint() != RunConfig(seed=1).fingerprint()
    assert 'out' not in first.result_fields()


@pytest.mark.parametrize('command,changes,field', [
    ('llt', {'x_max': 0}, 'X_max'),
    ('llt', {'n_grid': [1, 4]}, 'n_grid'),
    ('llt', {'c1': 0.0}, 'c1'),
    ('overlap', {'overlap_window': 2, 'x_max': 16}, 'overlap_window'),
    ('bounds', {'epsilon': 1.5}, 'epsilon'),
    ('bounds', {'betas': [-1.0]}, 'betas'),
    ('free-energy', {'replicas': 1}, 'replicas'),
    ('free-energy', {'betas': [10.0]}, 'betas'),
    ('fracmoment', {'theta': 1.0}, 'theta'),
    ('xstat', {'plan_q': 8}, 'plan_q'),
    ('xstat', {'theta': 0.3}, 'theta'),
    ('decompose', {'blocks': 0}, 'blocks'),
    ('llt', {'threads': 0}, 'threads'),
    ('llt', {'env_kind': 'uniform'}, 'env_kind'),
    ('llt', {'seed': -1}, 'seed'),
])
def test_validation(command, changes, field):
    config = RunConfig(**changes)
    with pytest.raises(ConfigError) as error:
        config.validate(command)
    assert error.value.field == field


@pytest.mark.parametrize('command', ['llt', 'overlap', 'bounds', 'free-energy', 'fracmoment', 'xstat', 'decompose'])
def test_defaults_validate(command):
    RunConfig().validate(command)


def test_build_law():
    assert RunConfig(x_max=4).build_law('llt').support_radius == 4
    law = RunConfig(x_max=4, law='log-power', law_exponent=1.0).build_law('llt')
    assert str(law.slowly_varying) == 'log-power(1)'


@pytest.mark.parametrize('data,field', [
    ({'seed': '5'}, 'seed'),
    ({'seed': 5.0}, 'seed'),
    ({'X_max': 16.5}, 'X_max'),
    ({'X_max': True}, 'X_max'),
    ({'threads': '2'}, 'threads'),
    ({'beta_max': 'big'}, 'beta_max'),
    ({'betas': 0.5}, 'betas'),
    ({'betas': [0.5, '1']}, 'betas'),
    ({'n_grid': [16, 32.0]}, 'n_grid'),
    ({'plan_l': '64'}, 'plan_l'),
    ({'cache': 3}, 'cache'),
    ({'dump_pmf': 'yes'}, 'dump_pmf'),
    ({'env_kind': None}, 'env_kind'),
])
def test_from_dict_rejects_wrong_types(data, field):
    with pytest.raises(ConfigError) as error:
        RunConfig.from_dict(data)
    assert error.value.field == field


def test_from_dict_accepts_integral_floats():
    config = RunConfig.from_dict({'beta_max': 2, 'betas': [0, 1], 'bound': 3, 'plan_l': None})
    assert config.betas == [0, 1]
    config.validate('decompose')


def test_validate_rejects_wrong_types():
    with pytest.raises(ConfigError) as error:
        RunConfig(seed='5').validate('llt')
    assert error.value.field == 'seed'

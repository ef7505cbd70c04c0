import os

import numpy as np
import pytest

from services.explorer_service import ExplorerService
from services.model_io_service import ModelDocument, ModelIOService
from services.register_machine_service import RegisterMachineService
from services.transform_service import TransformService

DATA_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "data")

GOLDEN_MODELS = sorted(f for f in os.listdir(os.path.join(DATA_DIR, "models")) if f.endswith(".rmrs"))


def data_path(*parts: str) -> str:
    return os.path.join(DATA_DIR, *parts)


def model_path(name: str) -> str:
    return data_path("models", f"{name}.rmrs")


def run_path(name: str) -> str:
    return data_path("runs", f"{name}.run")


def program_path(name: str) -> str:
    return data_path("programs", f"{name}.rm")


@pytest.fixture
def model_io() -> ModelIOService:
    return ModelIOService()


@pytest.fixture
def explorer() -> ExplorerService:
    return ExplorerService()


@pytest.fixture
def transforms() -> TransformService:
    return TransformService()


@pytest.fixture
def machines() -> RegisterMachineService:
    return RegisterMachineService()


@pytest.fixture
def load_model(model_io):
    def _load(name: str) -> ModelDocument:
        return model_io.load_model(model_path(name))

    return _load


@pytest.fixture
def load_program(machines):
    def _load(name: str):
        with open(program_path(name), "r", encoding="utf-8") as f:
            return machines.parse_rm(f.read())

    return _load


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)

import settings
from models.rotating_field import RotatingFieldParams
from models.hamiltonian_models import RotatingFieldModel, StaticModel, MirroredModel
from utils.util_class import WrongInputException

MODEL_NAMES = ["rotating_field", "static", "mirrored"]


def model_factory(model_name, **kwargs):
    """
    :param model_name: one of MODEL_NAMES
    :param kwargs:
        rotating_field: params=RotatingFieldParams or omega0, omega, theta
        static: matrix
        mirrored: model, t_final
    :return: HamiltonianModel
    """
    if model_name == "rotating_field":
        params = kwargs.get("params")
        if params is None:
            try:
                params = RotatingFieldParams(kwargs["omega0"], kwargs["omega"], kwargs["theta"])
            except KeyError as ke:
                raise WrongInputException(f"[model_factory] rotating_field needs argument {ke}")
        return RotatingFieldModel(params)
    elif model_name == "static":
        if "matrix" not in kwargs:
            raise WrongInputException("[model_factory] static model needs 'matrix'")
        return StaticModel(kwargs["matrix"])
    elif model_name == "mirrored":
        if "model" not in kwargs or "t_final" not in kwargs:
            raise WrongInputException("[model_factory] mirrored model needs 'model' and 't_final'")
        return MirroredModel(kwargs["model"], kwargs["t_final"])
    else:
        raise WrongInputException(f"[model_factory] wrong model name: {model_name}, "
                                  f"expected one of {MODEL_NAMES}")

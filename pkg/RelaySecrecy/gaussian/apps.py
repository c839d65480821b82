from django.apps import AppConfig


class GaussianConfig(AppConfig):
    name = 'RelaySecrecy.gaussian'
    verbose_name = 'Gaussian relay-eavesdropper channel'

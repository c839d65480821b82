from django.apps import AppConfig


class InformationConfig(AppConfig):
    name = 'RelaySecrecy.information'
    verbose_name = 'Information measures'

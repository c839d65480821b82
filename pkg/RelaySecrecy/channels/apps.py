from django.apps import AppConfig


class ChannelsConfig(AppConfig):
    name = 'RelaySecrecy.channels'
    verbose_name = 'Discrete memoryless relay-eavesdropper channels'
